#include "diskzero/zeros.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "diskzero/errors.hpp"

namespace diskzero {

DiskPoint DiskPoint::make(double r, double theta) {
    if (!std::isfinite(r) || !std::isfinite(theta)) throw std::invalid_argument("disk point must be finite");
    if (r < 0.0 || r >= 1.0) throw std::invalid_argument("disk point radius must lie in [0, 1)");
    return DiskPoint{r, r == 0.0 ? 0.0 : normalize_angle(theta)};
}

void Divisor::add(double r, double theta, int multiplicity) {
    if (multiplicity < 1) throw std::invalid_argument("multiplicity must be >= 1");
    entries_[DiskPoint::make(r, theta)] += multiplicity;
}

int Divisor::multiplicity(const DiskPoint& p) const {
    const auto it = entries_.find(p);
    return it == entries_.end() ? 0 : it->second;
}

long Divisor::total_multiplicity() const {
    long n = 0;
    for (const auto& [p, m] : entries_) n += m;
    return n;
}

long counting_measure(const Divisor& z, const Region& region) {
    long n = 0;
    if (const auto* disk = std::get_if<ClosedDisk>(&region)) {
        for (const auto& [p, m] : z.entries())
            if (p.r <= disk->r) n += m;
        return n;
    }
    const auto& s = std::get<AnnulusSector>(region);
    for (const auto& [p, m] : z.entries()) {
        if (!(p.r > s.r_inner && p.r <= s.r_outer)) continue;
        double offset = std::fmod(p.theta - s.theta_from, kTwoPi);
        if (offset < 0.0) offset += kTwoPi;
        if (offset < s.width || s.width >= kTwoPi) n += m;
    }
    return n;
}

bool divisor_embedding(const Divisor& z, const Divisor& z_prime) {
    for (const auto& [p, m] : z.entries())
        if (m > z_prime.multiplicity(p)) return false;
    return true;
}

double weighted_count_sum(const Divisor& z, double r, const PeriodicFunction& h) {
    if (!(r < 1.0)) throw std::invalid_argument("weighted count needs r < 1");
    double total = 0.0;
    for (const auto& [p, m] : z.entries())
        if (p.r <= r) total += static_cast<double>(m) * h(p.theta);
    return total;
}

DiskCharge atomize(const Divisor& z) {
    std::vector<Atom> atoms;
    atoms.reserve(z.support_size());
    for (const auto& [p, m] : z.entries()) atoms.push_back({p.r, p.theta, static_cast<double>(m)});
    return DiskCharge(std::move(atoms));
}

BlaschkeProduct::BlaschkeProduct(Divisor divisor) : divisor_(std::move(divisor)) {
    for (const auto& [p, m] : divisor_.entries()) {
        zeros_.push_back(p.z());
        mult_.push_back(m);
    }
}

std::complex<double> BlaschkeProduct::operator()(std::complex<double> z) const {
    if (!(std::abs(z) < 1.0)) throw std::invalid_argument("Blaschke products are evaluated on |z| < 1");
    std::complex<double> value = 1.0;
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
        const auto a = zeros_[i];
        std::complex<double> factor;
        if (a == 0.0) {
            factor = z;
        } else {
            const double mod = std::abs(a);
            factor = (mod / a) * (a - z) / (1.0 - std::conj(a) * z);
        }
        for (int k = 0; k < mult_[i]; ++k) value *= factor;
    }
    return value;
}

std::complex<double> eval_blaschke(const BlaschkeProduct& b, std::complex<double> z) { return b(z); }

long winding_zero_count(const ComplexFunction& f, double radius, std::size_t n_samples) {
    if (!(radius > 0.0)) throw std::invalid_argument("winding circle needs a positive radius");
    if (n_samples < 8) throw std::invalid_argument("winding count needs at least 8 samples");

    const auto sample = [&](std::size_t k) {
        const double th = kTwoPi * static_cast<double>(k % n_samples) / static_cast<double>(n_samples);
        const auto w = f(std::polar(radius, th));
        if (!(std::abs(w) >= 1e-13))
            throw NumericalFailure("|f| < 1e-13 on the circle at theta = " + std::to_string(th));
        return w;
    };

    std::complex<double> prev = sample(0);
    double total = 0.0;
    for (std::size_t k = 1; k <= n_samples; ++k) {
        const auto cur = sample(k);
        const double step = std::arg(cur / prev);
        if (std::abs(step) > kPi / 2.0)
            throw NumericalFailure("phase jump exceeds pi/2; increase n_samples");
        total += step;
        prev = cur;
    }
    return std::lround(total / kTwoPi);
}

BlaschkeConditionReport blaschke_condition(const Divisor& z) {
    BlaschkeConditionReport rep;
    for (const auto& [p, m] : z.entries()) rep.sum += static_cast<double>(m) * (1.0 - p.r);
    rep.convergent_indicated = std::isfinite(rep.sum);
    return rep;
}

}  // namespace diskzero
