#pragma once

// Mixture-pair file format and CSV formatting helpers.
//
// A pair file is JSON with one mixture per top-level key:
//
//   {
//     "label": "optional text",
//     "mixture1": [ {"family": "gaussian", "mu": 0.0, "sigma": 1.0, "weight": 0.5}, ... ],
//     "mixture2": [ {"family": "gamma", "shape": 2.0, "rate": 1.0, "weight": 1.0} ]
//   }
//
// Families: gaussian (mu, sigma), gamma (shape, rate), rayleigh (scale).
// Weights must be positive and sum to 1 within 1e-6 per mixture; they are
// renormalized exactly on load. Floats are emitted with 17 significant
// digits so a round trip preserves every parameter bit-for-bit.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tvbounds/mixture.hpp"

namespace tvbounds {

class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct MixturePairSpec {
    Mixture first;
    Mixture second;
    std::string label;
};

// 17 significant digits: enough to reproduce any double exactly.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline double require_number(const nlohmann::json& obj, const char* key,
                             const std::string& where) {
    if (!obj.contains(key))
        throw parse_error(where + ": missing field '" + key + "'");
    if (!obj[key].is_number())
        throw parse_error(where + ": field '" + key + "' must be a number");
    return obj[key].get<double>();
}

inline Mixture parse_mixture(const nlohmann::json& arr, const std::string& where) {
    if (!arr.is_array() || arr.empty())
        throw parse_error(where + ": expected a non-empty array of components");
    std::vector<Component> comps;
    std::vector<double> weights;
    double total = 0.0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ctx = where + ".component[" + std::to_string(i) + "]";
        const auto& obj = arr[i];
        if (!obj.is_object()) throw parse_error(ctx + ": expected an object");
        if (!obj.contains("family") || !obj["family"].is_string())
            throw parse_error(ctx + ": missing string field 'family'");
        const std::string family = obj["family"].get<std::string>();
        try {
            if (family == "gaussian") {
                comps.push_back(Gaussian{require_number(obj, "mu", ctx),
                                         require_number(obj, "sigma", ctx)});
            } else if (family == "gamma") {
                comps.push_back(Gamma{require_number(obj, "shape", ctx),
                                      require_number(obj, "rate", ctx)});
            } else if (family == "rayleigh") {
                comps.push_back(Rayleigh{require_number(obj, "scale", ctx)});
            } else {
                throw parse_error(ctx + ": unknown family '" + family + "'");
            }
            validate(comps.back());
        } catch (const std::invalid_argument& e) {
            throw parse_error(ctx + ": " + e.what());
        }
        weights.push_back(require_number(obj, "weight", ctx));
        if (!(weights.back() > 0.0))
            throw parse_error(ctx + ": weight must be positive");
        total += weights.back();
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw parse_error(where + ": weights sum to " + format_g17(total) +
                          ", expected 1 within 1e-6");
    return Mixture(std::move(comps), std::move(weights));
}

}  // namespace detail

inline MixturePairSpec parse_mixture_pair_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw parse_error("top level: expected a JSON object");
    for (const char* key : {"mixture1", "mixture2"})
        if (!doc.contains(key))
            throw parse_error(std::string("top level: missing key '") + key + "'");
    return MixturePairSpec{detail::parse_mixture(doc["mixture1"], "mixture1"),
                           detail::parse_mixture(doc["mixture2"], "mixture2"),
                           doc.value("label", std::string{})};
}

inline MixturePairSpec parse_mixture_pair_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open file");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
    try {
        return parse_mixture_pair_json(doc);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline nlohmann::json to_json(const Mixture& m) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        nlohmann::json obj;
        const Component& c = m.component(i);
        if (const auto* g = std::get_if<Gaussian>(&c)) {
            obj["family"] = "gaussian";
            obj["mu"] = g->mu;
            obj["sigma"] = g->sigma;
        } else if (const auto* g = std::get_if<Gamma>(&c)) {
            obj["family"] = "gamma";
            obj["shape"] = g->shape;
            obj["rate"] = g->rate;
        } else {
            obj["family"] = "rayleigh";
            obj["scale"] = std::get<Rayleigh>(c).scale;
        }
        obj["weight"] = m.weight(i);
        arr.push_back(obj);
    }
    return arr;
}

inline nlohmann::json to_json(const MixturePairSpec& spec) {
    nlohmann::json doc;
    if (!spec.label.empty()) doc["label"] = spec.label;
    doc["mixture1"] = to_json(spec.first);
    doc["mixture2"] = to_json(spec.second);
    return doc;
}

}  // namespace tvbounds
