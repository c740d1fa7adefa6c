#pragma once

namespace tvbounds {

// Kahan-Neumaier compensated accumulator. The bound aggregations add
// thousands of interval masses at 1e-12 tolerances; plain summation
// would eat most of that budget.
class KahanSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if ((sum_ >= 0.0 ? sum_ : -sum_) >= (v >= 0.0 ? v : -v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace tvbounds
