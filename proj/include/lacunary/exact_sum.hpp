#pragma once

#include <cmath>
#include <vector>

namespace lacunary::detail {

// Error-free running sum of doubles kept as a nonoverlapping expansion
// (Shewchuk's grow-expansion).  The represented value is exactly the
// mathematical sum of everything fed in, so comparisons against a double
// give exact verdicts.  Expansion length stays tiny for same-scale inputs.
class ExactSum {
public:
    void add(double x) {
        std::vector<double> fresh;
        fresh.reserve(limbs_.size() + 1);
        for (const double limb : limbs_) {
            const double s = x + limb;
            const double bv = s - x;
            const double err = (x - (s - bv)) + (limb - bv);
            if (err != 0.0) fresh.push_back(err);
            x = s;
        }
        if (x != 0.0) fresh.push_back(x);
        limbs_ = std::move(fresh);
    }

    // Exact a - b decomposed by TwoSum, so |a - b| enters without rounding.
    void add_abs_diff(double a, double b) {
        const double d = a - b;
        const double bv = d - a;
        const double err = (a - (d - bv)) + (-b - bv);
        // d + err == a - b exactly; d dominates, so its sign is the sign
        // of the difference (and err == 0 whenever d == 0).
        if (d >= 0.0) {
            add(d);
            add(err);
        } else {
            add(-d);
            add(-err);
        }
    }

    // Sign of (exact sum - r): -1, 0, +1.
    int compare(double r) const {
        ExactSum probe = *this;
        probe.add(-r);
        for (std::size_t i = probe.limbs_.size(); i > 0; --i) {
            const double limb = probe.limbs_[i - 1];
            if (limb > 0.0) return 1;
            if (limb < 0.0) return -1;
        }
        return 0;
    }

    double approx() const {
        double s = 0.0;
        for (const double limb : limbs_) s += limb;
        return s;
    }

private:
    std::vector<double> limbs_;  // nonoverlapping, ascending magnitude
};

}  // namespace lacunary::detail
