#ifndef DEADLINE_PMF_HPP
#define DEADLINE_PMF_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace deadline {

/// Tolerance on |sum(p) - 1| accepted from user input before rescaling.
inline constexpr double kIngestMassTolerance = 1e-6;

/// Drift tolerance asserted on every distribution the library produces.
inline constexpr double kMassDriftTolerance = 1e-9;

/**
 * Finite discrete probability mass function over non-negative time values.
 *
 * Support is strictly ascending, every atom carries positive mass and the
 * masses sum to one within kMassDriftTolerance. Instances are immutable.
 * A default-constructed Pmf is the point mass at zero, the identity of
 * convolution.
 */
class Pmf {
public:
    Pmf() : support_{0.0}, probs_{1.0} {}

    static Pmf point(double value) {
        if (!std::isfinite(value) || value < 0.0) {
            throw Error(Errc::NegativeValue, "point mass at " + std::to_string(value));
        }
        return Pmf(std::vector<double>{value}, std::vector<double>{1.0});
    }

    /// Adopts already-normalised atoms produced by a composition. The
    /// invariants are re-checked; a violation here is a library bug, not
    /// bad input, so it raises std::logic_error.
    static Pmf from_normalized(std::vector<double> support, std::vector<double> probs) {
        if (support.empty() || support.size() != probs.size()) {
            throw std::logic_error("Pmf: empty or misaligned atoms");
        }
        double mass = 0.0;
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (!(probs[i] > 0.0)) throw std::logic_error("Pmf: non-positive atom mass");
            if (i > 0 && !(support[i - 1] < support[i])) {
                throw std::logic_error("Pmf: support not strictly ascending");
            }
            mass += probs[i];
        }
        if (!(support.front() >= 0.0) || !std::isfinite(support.back())) {
            throw std::logic_error("Pmf: support outside [0, inf)");
        }
        if (std::abs(mass - 1.0) > kMassDriftTolerance) {
            throw std::logic_error("Pmf: mass drift " + std::to_string(mass - 1.0));
        }
        return Pmf(std::move(support), std::move(probs));
    }

    std::span<const double> support() const noexcept { return support_; }
    std::span<const double> probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return support_.size(); }
    double min() const noexcept { return support_.front(); }
    double max() const noexcept { return support_.back(); }

    double total_mass() const noexcept {
        double s = 0.0;
        for (double p : probs_) s += p;
        return s;
    }

    friend bool operator==(const Pmf&, const Pmf&) = default;

private:
    Pmf(std::vector<double> support, std::vector<double> probs)
        : support_(std::move(support)), probs_(std::move(probs)) {}

    std::vector<double> support_;
    std::vector<double> probs_;
};

/// Builds a Pmf from unsorted, possibly repeated (value, probability) pairs.
/// Duplicates are merged; the result is rescaled so the masses sum to one.
inline Pmf make_pmf(std::span<const std::pair<double, double>> pairs) {
    if (pairs.empty()) throw Error(Errc::EmptyInput, "make_pmf: no atoms");
    std::vector<std::pair<double, double>> atoms(pairs.begin(), pairs.end());
    for (const auto& [v, p] : atoms) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(Errc::NegativeValue, "value " + std::to_string(v) + " is not a finite non-negative time");
        }
        if (!std::isfinite(p) || !(p > 0.0)) {
            throw Error(Errc::NonPositiveProbability, "probability " + std::to_string(p) + " at value " + std::to_string(v));
        }
    }
    std::sort(atoms.begin(), atoms.end());

    std::vector<double> support;
    std::vector<double> probs;
    support.reserve(atoms.size());
    probs.reserve(atoms.size());
    for (const auto& [v, p] : atoms) {
        if (!support.empty() && support.back() == v) {
            probs.back() += p;
        } else {
            support.push_back(v);
            probs.push_back(p);
        }
    }
    double mass = 0.0;
    for (double p : probs) mass += p;
    if (std::abs(mass - 1.0) > kIngestMassTolerance) {
        throw Error(Errc::MassNotOne, "probabilities sum to " + std::to_string(mass));
    }
    if (mass != 1.0) {
        for (double& p : probs) p /= mass;
    }
    return Pmf::from_normalized(std::move(support), std::move(probs));
}

inline Pmf make_pmf(std::initializer_list<std::pair<double, double>> pairs) {
    return make_pmf(std::span<const std::pair<double, double>>(pairs.begin(), pairs.size()));
}

/// Right-continuous step CDF view of a Pmf. The final cumulative value is
/// pinned to exactly 1 so queries at or beyond the maximum return 1.
class StepCdf {
public:
    explicit StepCdf(const Pmf& pmf) : support_(pmf.support().begin(), pmf.support().end()) {
        cums_.reserve(pmf.size());
        double acc = 0.0;
        for (double p : pmf.probs()) {
            acc += p;
            cums_.push_back(std::min(acc, 1.0));
        }
        cums_.back() = 1.0;
    }

    /// Pr(X <= t).
    double operator()(double t) const noexcept {
        auto it = std::upper_bound(support_.begin(), support_.end(), t);
        if (it == support_.begin()) return 0.0;
        return cums_[static_cast<std::size_t>(it - support_.begin()) - 1];
    }

    std::span<const double> support() const noexcept { return support_; }
    std::span<const double> cums() const noexcept { return cums_; }

private:
    std::vector<double> support_;
    std::vector<double> cums_;
};

inline double cdf_at(const Pmf& pmf, double t) {
    auto support = pmf.support();
    auto probs = pmf.probs();
    auto end = static_cast<std::size_t>(std::upper_bound(support.begin(), support.end(), t) - support.begin());
    if (end == support.size()) return 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < end; ++i) acc += probs[i];
    return std::min(acc, 1.0);
}

inline double expectation(const Pmf& pmf) {
    double e = 0.0;
    auto support = pmf.support();
    auto probs = pmf.probs();
    for (std::size_t i = 0; i < support.size(); ++i) e += support[i] * probs[i];
    return e;
}

struct UniformSpec {
    double low = 0.0;
    double high = 1.0;
    std::size_t bins = 1;

    friend bool operator==(const UniformSpec&, const UniformSpec&) = default;
};

/// Uniform on [low, high] discretised to `bins` equal-mass midpoint atoms.
inline Pmf discretized_uniform(double low, double high, std::size_t bins) {
    if (!std::isfinite(low) || !std::isfinite(high) || low < 0.0 || !(low < high)) {
        throw Error(Errc::InvalidRange, "uniform range [" + std::to_string(low) + ", " + std::to_string(high) + "]");
    }
    if (bins == 0) throw Error(Errc::ZeroBins, "uniform needs at least one bin");
    const double width = (high - low) / static_cast<double>(bins);
    const double mass = 1.0 / static_cast<double>(bins);
    std::vector<double> support(bins);
    std::vector<double> probs(bins, mass);
    for (std::size_t k = 0; k < bins; ++k) {
        support[k] = low + (static_cast<double>(k) + 0.5) * width;
    }
    // 1/M summed M times can drift by a few ulps; renormalise so the point
    // masses stay exactly equal.
    double total = 0.0;
    for (double p : probs) total += p;
    if (total != 1.0) {
        for (double& p : probs) p /= total;
    }
    return Pmf::from_normalized(std::move(support), std::move(probs));
}

inline Pmf discretized_uniform(const UniformSpec& spec) {
    return discretized_uniform(spec.low, spec.high, spec.bins);
}

} // namespace deadline

#endif
