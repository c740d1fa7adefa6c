// Command-line front end for the TV bound library.
//
// Subcommands:
//   exact FILE        closed-form TV for a pair of single Gaussians
//   bounds FILE       deterministic CELB/CEUB report
//   cgqlb FILE        coarse-grained quantized lower bound
//   mc FILE           Monte Carlo TV / KL estimates and the Pinsker bound
//   envelope FILE     CSV dump of the envelope decomposition and a density grid
//   experiment        random-mixture benchmark; one CSV row per trial
//
// Exit codes: 0 success, 2 usage or input errors, 3 numerical failures.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvbounds/tvbounds.hpp"

namespace {

using namespace tvbounds;

std::string fmt(double v) { return format_g17(v); }

void cmd_exact(const std::string& file) {
    const MixturePairSpec spec = parse_mixture_pair_file(file);
    if (spec.first.size() != 1 || spec.second.size() != 1 ||
        !std::holds_alternative<Gaussian>(spec.first.component(0)) ||
        !std::holds_alternative<Gaussian>(spec.second.component(0)))
        throw parse_error(file + ": 'exact' needs two single-component Gaussian mixtures");
    const double tv = gaussian_tv_exact(std::get<Gaussian>(spec.first.component(0)),
                                        std::get<Gaussian>(spec.second.component(0)));
    std::cout << "exact_tv: " << fmt(tv) << "\n";
}

const char* method_name(BoundMethod m) {
    switch (m) {
        case BoundMethod::ratio: return "ratio";
        case BoundMethod::basic: return "basic";
        default: return "trivial";
    }
}

void cmd_bounds(const std::string& file, int refine_factor, const std::string& reference) {
    const MixturePairSpec spec = parse_mixture_pair_file(file);
    ReferenceRule rule = ReferenceRule::best_of_both;
    if (reference == "first") rule = ReferenceRule::upper_of_first;
    else if (reference == "second") rule = ReferenceRule::upper_of_second;
    else if (reference != "both") throw parse_error("--reference must be both, first or second");

    const auto t0 = std::chrono::steady_clock::now();
    const BoundReport rep = celb_ceub(spec.first, spec.second, refine_factor, rule);
    const auto t1 = std::chrono::steady_clock::now();

    if (!spec.label.empty()) std::cout << "label: " << spec.label << "\n";
    std::cout << "refine_factor: " << rep.refine_factor << "\n"
              << "intervals: " << rep.per_interval.size() << "\n"
              << "celb: " << fmt(rep.celb) << "\n"
              << "ceub: " << fmt(rep.ceub) << "\n"
              << "min_envelope_mass: " << fmt(rep.min_envelope_mass) << "\n"
              << "max_envelope_mass: " << fmt(rep.max_envelope_mass) << "\n"
              << "basic_lower: " << fmt(rep.basic_lower) << "\n"
              << "basic_upper: " << fmt(rep.basic_upper) << "\n"
              << "ratio_refinement: " << (rep.ratio_available ? "available" : "unavailable")
              << "\n";
    if (rep.ratio_available)
        std::cout << "ratio_lower: " << fmt(rep.ratio_lower) << "\n"
                  << "ratio_upper: " << fmt(rep.ratio_upper) << "\n";
    std::cout << "method_lower: " << method_name(rep.method_lower) << "\n"
              << "method_upper: " << method_name(rep.method_upper) << "\n"
              << "bayes_error_lo: " << fmt(rep.bayes_error_lo) << "\n"
              << "bayes_error_hi: " << fmt(rep.bayes_error_hi) << "\n"
              << "wall_time_ms: "
              << std::chrono::duration<double, std::milli>(t1 - t0).count() << "\n";
}

void cmd_cgqlb(const std::string& file, int samples, std::uint64_t seed, int bins) {
    const MixturePairSpec spec = parse_mixture_pair_file(file);
    Partition partition;
    if (bins > 0) {
        const auto b1 = spec.first.support_bracket(1e-12);
        const auto b2 = spec.second.support_bracket(1e-12);
        const double lo = std::min(b1.first, b2.first);
        const double hi = std::max(b1.second, b2.second);
        std::vector<double> cuts;
        for (int i = 1; i < bins; ++i) cuts.push_back(lo + (hi - lo) * i / bins);
        partition = Partition(std::move(cuts));
        std::cout << "partition: " << bins << " uniform bins on [" << fmt(lo) << ", " << fmt(hi)
                  << "]\n";
    } else {
        partition = sample_partition(spec.first, spec.second, samples, seed);
        std::cout << "partition: " << partition.cuts.size() << " sample-induced cuts (seed "
                  << seed << ")\n";
    }
    std::cout << "cgqlb: " << fmt(cgqlb(spec.first, spec.second, partition)) << "\n";
}

void cmd_mc(const std::string& file, int samples, std::uint64_t seed) {
    const MixturePairSpec spec = parse_mixture_pair_file(file);
    const MCEstimate tv = mc_tv(spec.first, spec.second, samples, seed);
    const MCEstimate kl = mc_kl(spec.first, spec.second, samples, seed + 1);
    std::cout << "samples: " << samples << "\n"
              << "seed: " << seed << "\n"
              << "mc_tv_mean: " << fmt(tv.mean) << "\n"
              << "mc_tv_std_error: " << fmt(tv.std_error) << "\n"
              << "mc_tv_ci95_lo: " << fmt(tv.ci95_lo) << "\n"
              << "mc_tv_ci95_hi: " << fmt(tv.ci95_hi) << "\n"
              << "mc_kl_mean: " << fmt(kl.mean) << "\n"
              << "mc_kl_std_error: " << fmt(kl.std_error) << "\n"
              << "pinsker_upper: " << fmt(pinsker_upper(std::max(0.0, kl.mean))) << "\n";
}

void write_envelope_csv(std::ostream& out, const EnvelopeDecomposition& dec) {
    out << "a,b,l,u,l_prime,u_prime\n";
    for (const auto& iv : dec.intervals)
        out << fmt(iv.a) << ',' << fmt(iv.b) << ',' << iv.l << ',' << iv.u << ',' << iv.l_prime
            << ',' << iv.u_prime << '\n';
}

void cmd_envelope(const std::string& file, int refine_factor, const std::string& out_path,
                  int grid_points) {
    const MixturePairSpec spec = parse_mixture_pair_file(file);
    const EnvelopeDecomposition dec = refine(decompose(spec.first, spec.second), refine_factor);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
    write_envelope_csv(out, dec);
    if (!out) throw std::runtime_error(out_path + ": write failed");

    // Density grid: mixtures and their raw component envelopes.
    const auto b1 = spec.first.support_bracket(1e-12);
    const auto b2 = spec.second.support_bracket(1e-12);
    const double lo = std::min(b1.first, b2.first);
    const double hi = std::max(b1.second, b2.second);
    const std::string grid_path = out_path + ".grid.csv";
    std::ofstream grid(grid_path, std::ios::binary);
    if (!grid) throw std::runtime_error(grid_path + ": cannot open for writing");
    grid << "x,m,m_prime,env_lo_m,env_hi_m,env_lo_m_prime,env_hi_m_prime\n";
    auto envelope_at = [](const Mixture& m, double x) {
        double lo_v = std::numeric_limits<double>::infinity();
        double hi_v = 0.0;
        for (const auto& c : m.components()) {
            const double v = pdf(c, x);
            lo_v = std::min(lo_v, v);
            hi_v = std::max(hi_v, v);
        }
        return std::pair{lo_v, hi_v};
    };
    for (int i = 0; i < grid_points; ++i) {
        const double x = lo + (hi - lo) * i / (grid_points - 1);
        const auto [l1, h1] = envelope_at(spec.first, x);
        const auto [l2, h2] = envelope_at(spec.second, x);
        grid << fmt(x) << ',' << fmt(spec.first.pdf(x)) << ',' << fmt(spec.second.pdf(x)) << ','
             << fmt(l1) << ',' << fmt(h1) << ',' << fmt(l2) << ',' << fmt(h2) << '\n';
    }
    if (!grid) throw std::runtime_error(grid_path + ": write failed");
    std::cout << "intervals: " << dec.size() << "\n"
              << "wrote: " << out_path << "\n"
              << "wrote: " << grid_path << "\n";
}

struct TrialRow {
    int trial;
    double celb, ceub, cgq, mc_mean, mc_se, pinsker;
    double exact = std::numeric_limits<double>::quiet_NaN();
};

void cmd_experiment(int dataset, int k, int trials, std::uint64_t seed, int mc_n, int cgq_n,
                    int refine_factor, const std::string& out_path) {
    GaussianProtocol proto;
    proto.mean_std = dataset == 2 ? 5.0 : 1.0;

    std::ofstream file_out;
    if (!out_path.empty()) {
        file_out.open(out_path, std::ios::binary);
        if (!file_out) throw std::runtime_error(out_path + ": cannot open for writing");
    }
    std::ostream& out = out_path.empty() ? std::cout : file_out;

    out << "trial,k,dataset,seed,celb,ceub,cgqlb,mc_tv,mc_tv_se,pinsker,exact_tv,"
           "rel_celb,rel_ceub,rel_cgqlb,rel_pinsker\n";

    std::vector<TrialRow> rows;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = seed + 0x9E3779B97F4A7C15ull * (t + 1);
        std::mt19937_64 rng(trial_seed);
        const Mixture m = random_gaussian_mixture(k, proto, rng);
        const Mixture mp = random_gaussian_mixture(k, proto, rng);

        TrialRow row;
        row.trial = t;
        const BoundReport rep = celb_ceub(m, mp, refine_factor);
        row.celb = rep.celb;
        row.ceub = rep.ceub;
        row.cgq = cgqlb(m, mp, sample_partition(m, mp, cgq_n, trial_seed ^ 0x5DEECE66Dull));
        const MCEstimate tv = mc_tv(m, mp, mc_n, trial_seed ^ 0xB5297A4Dull);
        row.mc_mean = tv.mean;
        row.mc_se = tv.std_error;
        const MCEstimate kl = mc_kl(m, mp, mc_n, trial_seed ^ 0x68E31DA4ull);
        row.pinsker = pinsker_upper(std::max(0.0, kl.mean));
        if (k == 1)
            row.exact = gaussian_tv_exact(std::get<Gaussian>(m.component(0)),
                                          std::get<Gaussian>(mp.component(0)));
        rows.push_back(row);

        auto rel = [&](double v) { return row.mc_mean > 0.0 ? fmt(v / row.mc_mean) : ""; };
        out << t << ',' << k << ',' << dataset << ',' << trial_seed << ',' << fmt(row.celb) << ','
            << fmt(row.ceub) << ',' << fmt(row.cgq) << ',' << fmt(row.mc_mean) << ','
            << fmt(row.mc_se) << ',' << fmt(row.pinsker) << ','
            << (k == 1 ? fmt(row.exact) : std::string{}) << ',' << rel(row.celb) << ','
            << rel(row.ceub) << ',' << rel(row.cgq) << ',' << rel(row.pinsker) << '\n';
    }

    // Summary: mean and standard deviation per column, absolute and relative.
    auto stats = [&](auto getter) {
        double mean = 0.0;
        for (const auto& r : rows) mean += getter(r);
        mean /= rows.size();
        double var = 0.0;
        for (const auto& r : rows) var += (getter(r) - mean) * (getter(r) - mean);
        var = rows.size() > 1 ? var / (rows.size() - 1) : 0.0;
        return std::pair{mean, std::sqrt(var)};
    };
    const auto [celb_m, celb_s] = stats([](const TrialRow& r) { return r.celb; });
    const auto [ceub_m, ceub_s] = stats([](const TrialRow& r) { return r.ceub; });
    const auto [cgq_m, cgq_s] = stats([](const TrialRow& r) { return r.cgq; });
    const auto [mc_m, mc_s] = stats([](const TrialRow& r) { return r.mc_mean; });
    const auto [pin_m, pin_s] = stats([](const TrialRow& r) { return r.pinsker; });
    auto rel_stats = [&](auto getter) {
        return stats([&](const TrialRow& r) {
            return r.mc_mean > 0.0 ? getter(r) / r.mc_mean
                                   : std::numeric_limits<double>::quiet_NaN();
        });
    };
    const auto [rcelb_m, rcelb_s] = rel_stats([](const TrialRow& r) { return r.celb; });
    const auto [rceub_m, rceub_s] = rel_stats([](const TrialRow& r) { return r.ceub; });
    const auto [rcgq_m, rcgq_s] = rel_stats([](const TrialRow& r) { return r.cgq; });
    const auto [rpin_m, rpin_s] = rel_stats([](const TrialRow& r) { return r.pinsker; });

    out << "mean," << k << ',' << dataset << ",," << fmt(celb_m) << ',' << fmt(ceub_m) << ','
        << fmt(cgq_m) << ',' << fmt(mc_m) << ",," << fmt(pin_m) << ",," << fmt(rcelb_m) << ','
        << fmt(rceub_m) << ',' << fmt(rcgq_m) << ',' << fmt(rpin_m) << '\n';
    out << "std," << k << ',' << dataset << ",," << fmt(celb_s) << ',' << fmt(ceub_s) << ','
        << fmt(cgq_s) << ',' << fmt(mc_s) << ",," << fmt(pin_s) << ",," << fmt(rcelb_s) << ','
        << fmt(rceub_s) << ',' << fmt(rcgq_s) << ',' << fmt(rpin_s) << '\n';
    if (!out) throw std::runtime_error("write failed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic and stochastic TV bounds between univariate mixtures"};
    app.require_subcommand(1);

    std::string file, out_path, reference = "both";
    int refine_factor = 10;
    int samples = 10000;
    int cgq_samples = 100;
    int bins = 0;
    int grid_points = 512;
    int dataset = 1;
    int k = 5;
    int trials = 100;
    std::uint64_t seed = 0;

    auto* exact = app.add_subcommand("exact", "closed-form Gaussian TV");
    exact->add_option("file", file, "mixture pair file")->required();

    auto* bounds = app.add_subcommand("bounds", "deterministic CELB/CEUB report");
    bounds->add_option("file", file, "mixture pair file")->required();
    bounds->add_option("--refine", refine_factor, "splits per finite elementary interval")
        ->check(CLI::PositiveNumber);
    bounds->add_option("--reference", reference, "ratio reference rule: both|first|second");

    auto* cgq = app.add_subcommand("cgqlb", "coarse-grained quantized lower bound");
    cgq->add_option("file", file, "mixture pair file")->required();
    cgq->add_option("--samples", cgq_samples, "pooled sample count for the partition");
    cgq->add_option("--seed", seed, "RNG seed");
    cgq->add_option("--bins", bins, "use this many uniform bins instead of samples");

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimates and the Pinsker bound");
    mc->add_option("file", file, "mixture pair file")->required();
    mc->add_option("--samples", samples, "number of Monte Carlo samples");
    mc->add_option("--seed", seed, "RNG seed");

    auto* env = app.add_subcommand("envelope", "dump decomposition and density grid as CSV");
    env->add_option("file", file, "mixture pair file")->required();
    env->add_option("--refine", refine_factor, "splits per finite elementary interval")
        ->check(CLI::PositiveNumber);
    env->add_option("--out", out_path, "output CSV path")->required();
    env->add_option("--grid-points", grid_points, "density grid resolution")
        ->check(CLI::Range(2, 1 << 20));

    auto* exp = app.add_subcommand("experiment", "random-mixture benchmark (CSV)");
    exp->add_option("--dataset", dataset, "1: means ~ N(0,1); 2: means ~ N(0,25)")
        ->check(CLI::Range(1, 2));
    exp->add_option("--k", k, "components per mixture")->check(CLI::PositiveNumber);
    exp->add_option("--trials", trials, "number of random pairs")->check(CLI::PositiveNumber);
    exp->add_option("--seed", seed, "base RNG seed");
    exp->add_option("--samples", samples, "Monte Carlo samples per trial");
    exp->add_option("--cgq-samples", cgq_samples, "pooled samples for the CGQLB partition");
    exp->add_option("--refine", refine_factor, "splits per finite elementary interval")
        ->check(CLI::PositiveNumber);
    exp->add_option("--out", out_path, "output CSV path (default: stdout)");

    exact->callback([&] { cmd_exact(file); });
    bounds->callback([&] { cmd_bounds(file, refine_factor, reference); });
    cgq->callback([&] { cmd_cgqlb(file, cgq_samples, seed, bins); });
    mc->callback([&] { cmd_mc(file, samples, seed); });
    env->callback([&] { cmd_envelope(file, refine_factor, out_path, grid_points); });
    exp->callback([&] {
        cmd_experiment(dataset, k, trials, seed, samples, cgq_samples, refine_factor, out_path);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const tvbounds::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tvbounds::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
