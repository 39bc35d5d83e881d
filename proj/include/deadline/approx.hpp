#ifndef DEADLINE_APPROX_HPP
#define DEADLINE_APPROX_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "pmf.hpp"

namespace deadline {

/// Default ceiling on the atom count of any exact intermediate result.
inline constexpr std::size_t kDefaultSupportCap = 10'000'000;

/// Which side of the true CDF a trimmed distribution sits on. Upper
/// overestimates Pr(X <= T) (mass moved earlier); Lower underestimates it
/// (mass moved later).
enum class BoundSide { Upper, Lower };

inline const char* side_name(BoundSide side) { return side == BoundSide::Upper ? "upper" : "lower"; }

namespace detail {

inline void check_epsilon(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw Error(Errc::InvalidEpsilon, "epsilon must lie in (0, 1), got " + std::to_string(eps));
    }
}

struct Atoms {
    std::vector<double> values;
    std::vector<double> probs;

    std::size_t size() const noexcept { return values.size(); }
};

// Merge two ascending atom lists, summing masses of equal values.
inline Atoms merge_atoms(const Atoms& a, const Atoms& b) {
    Atoms out;
    out.values.reserve(a.size() + b.size());
    out.probs.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        double v;
        double p;
        if (j == b.size() || (i < a.size() && a.values[i] < b.values[j])) {
            v = a.values[i];
            p = a.probs[i++];
        } else if (i == a.size() || b.values[j] < a.values[i]) {
            v = b.values[j];
            p = b.probs[j++];
        } else {
            v = a.values[i];
            p = a.probs[i++] + b.probs[j++];
        }
        if (!out.values.empty() && out.values.back() == v) {
            out.probs.back() += p;
        } else {
            out.values.push_back(v);
            out.probs.push_back(p);
        }
    }
    return out;
}

// `base` shifted by the atoms [lo, hi) of `shifts`, merged pairwise. Every
// partial result's support is a subset of the final support, so exceeding
// the cap at any level proves the final result exceeds it too.
inline Atoms merge_shifted(const Pmf& base, const Pmf& shifts, std::size_t lo, std::size_t hi, std::size_t cap) {
    if (hi - lo == 1) {
        const double dv = shifts.support()[lo];
        const double dp = shifts.probs()[lo];
        Atoms out;
        out.values.reserve(base.size());
        out.probs.reserve(base.size());
        auto bv = base.support();
        auto bp = base.probs();
        for (std::size_t i = 0; i < bv.size(); ++i) {
            const double v = bv[i] + dv;
            const double p = bp[i] * dp;
            if (p == 0.0) continue;
            // Distinct bases can round onto the same sum.
            if (!out.values.empty() && out.values.back() == v) {
                out.probs.back() += p;
            } else {
                out.values.push_back(v);
                out.probs.push_back(p);
            }
        }
        return out;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    Atoms left = merge_shifted(base, shifts, lo, mid, cap);
    Atoms right = merge_shifted(base, shifts, mid, hi, cap);
    Atoms merged = merge_atoms(left, right);
    if (merged.size() > cap) {
        throw Error(Errc::SupportCapExceeded,
                    "convolution support exceeds cap of " + std::to_string(cap) + " atoms");
    }
    return merged;
}

} // namespace detail

/**
 * Merges runs of consecutive atoms whose accumulated mass stays within
 * `eps` into a neighbouring kept atom.
 *
 * Upper scans ascending and folds each run into the preceding kept atom, so
 * 0 <= F_trim(T) - F(T) <= eps and the result has fewer than 1/eps + 1 atoms.
 * Lower is the descending mirror: runs fold into the following kept atom and
 * the maximum atom always survives, giving 0 <= F(T) - F_trim(T) <= eps.
 * The merge test is the exact comparison `p + mass <= eps`.
 */
inline Pmf trim(const Pmf& pmf, double eps, BoundSide side) {
    detail::check_epsilon(eps);
    auto values = pmf.support();
    auto probs = pmf.probs();
    const std::size_t n = values.size();

    std::vector<double> out_values;
    std::vector<double> out_probs;

    if (side == BoundSide::Upper) {
        std::size_t prev = 0;
        double p = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            if (p + probs[i] <= eps) {
                p += probs[i];
            } else {
                out_values.push_back(values[prev]);
                out_probs.push_back(probs[prev] + p);
                prev = i;
                p = 0.0;
            }
        }
        out_values.push_back(values[prev]);
        out_probs.push_back(probs[prev] + p);
    } else {
        std::size_t prev = n - 1;
        double p = 0.0;
        for (std::size_t k = n - 1; k-- > 0;) {
            if (p + probs[k] <= eps) {
                p += probs[k];
            } else {
                out_values.push_back(values[prev]);
                out_probs.push_back(probs[prev] + p);
                prev = k;
                p = 0.0;
            }
        }
        out_values.push_back(values[prev]);
        out_probs.push_back(probs[prev] + p);
        std::reverse(out_values.begin(), out_values.end());
        std::reverse(out_probs.begin(), out_probs.end());
    }
    return Pmf::from_normalized(std::move(out_values), std::move(out_probs));
}

/// Exact distribution of the independent sum a + b.
inline Pmf convolve(const Pmf& a, const Pmf& b, std::size_t cap = kDefaultSupportCap) {
    // Shift the longer operand by each atom of the shorter one.
    const Pmf& base = a.size() >= b.size() ? a : b;
    const Pmf& shifts = a.size() >= b.size() ? b : a;
    detail::Atoms atoms = detail::merge_shifted(base, shifts, 0, shifts.size(), cap);
    if (atoms.size() > cap) {
        throw Error(Errc::SupportCapExceeded, "convolution support exceeds cap of " + std::to_string(cap) + " atoms");
    }
    return Pmf::from_normalized(std::move(atoms.values), std::move(atoms.probs));
}

/// Sum of the inputs in order, trimming after every addition (the first
/// input included). With exact inputs the result is a one-sided
/// (n * eps)-approximation of the true sum on the requested side.
inline Pmf sequence_approx(std::span<const Pmf> pmfs, double eps, BoundSide side,
                           std::size_t cap = kDefaultSupportCap) {
    detail::check_epsilon(eps);
    if (pmfs.empty()) throw Error(Errc::EmptyInput, "sequence_approx: no inputs");
    Pmf acc;
    for (const Pmf& x : pmfs) {
        acc = trim(convolve(acc, x, cap), eps, side);
    }
    return acc;
}

/// Exact distribution of the maximum of independent inputs, from the product
/// of their CDFs over the merged support.
inline Pmf parallel_compose(std::span<const Pmf> pmfs) {
    if (pmfs.empty()) throw Error(Errc::EmptyInput, "parallel_compose: no inputs");
    if (pmfs.size() == 1) return pmfs.front();

    std::vector<StepCdf> cdfs;
    cdfs.reserve(pmfs.size());
    std::vector<double> grid;
    for (const Pmf& p : pmfs) {
        cdfs.emplace_back(p);
        grid.insert(grid.end(), p.support().begin(), p.support().end());
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // One cursor per input: index of the first atom strictly above the grid point.
    std::vector<std::size_t> cursor(pmfs.size(), 0);
    std::vector<double> values;
    std::vector<double> probs;
    double prev_product = 0.0;
    for (double v : grid) {
        double product = 1.0;
        for (std::size_t i = 0; i < cdfs.size(); ++i) {
            auto support = cdfs[i].support();
            while (cursor[i] < support.size() && support[cursor[i]] <= v) ++cursor[i];
            product *= cursor[i] == 0 ? 0.0 : cdfs[i].cums()[cursor[i] - 1];
        }
        const double mass = product - prev_product;
        if (mass > 0.0) {
            values.push_back(v);
            probs.push_back(mass);
        }
        prev_product = product;
    }
    return Pmf::from_normalized(std::move(values), std::move(probs));
}

} // namespace deadline

#endif
