#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "diskzero/charge.hpp"
#include "diskzero/periodic.hpp"

namespace diskzero {

/// A point of the unit disk in polar form, theta in (-pi, pi] (0 at the origin).
struct DiskPoint {
    double r;
    double theta;

    static DiskPoint make(double r, double theta);
    std::complex<double> z() const { return std::polar(r, theta); }
    auto operator<=>(const DiskPoint&) const = default;
};

/// Multiplicity map of a finite zero sequence in the unit disk.
class Divisor {
public:
    Divisor() = default;

    /// Adds multiplicity to the point (r, theta); repeated points accumulate.
    void add(double r, double theta, int multiplicity = 1);

    int multiplicity(const DiskPoint& p) const;
    const std::map<DiskPoint, int>& entries() const { return entries_; }
    std::size_t support_size() const { return entries_.size(); }
    long total_multiplicity() const;
    bool empty() const { return entries_.empty(); }

private:
    std::map<DiskPoint, int> entries_;
};

struct ClosedDisk {
    double r;
};
/// r_inner < |z| <= r_outer with arg z in the arc [theta_from, theta_from + width).
struct AnnulusSector {
    double r_inner;
    double r_outer;
    double theta_from;
    double width;
};
using Region = std::variant<ClosedDisk, AnnulusSector>;

long counting_measure(const Divisor& z, const Region& region);

/// Z(p) <= Z'(p) at every point.
bool divisor_embedding(const Divisor& z, const Divisor& z_prime);

/// Sum of multiplicity * h(theta_k) over entries with r_k <= r.
double weighted_count_sum(const Divisor& z, double r, const PeriodicFunction& h);

/// Unit-mass atoms weighted by multiplicity.
DiskCharge atomize(const Divisor& z);

class BlaschkeProduct {
public:
    explicit BlaschkeProduct(Divisor divisor);

    std::complex<double> operator()(std::complex<double> z) const;
    const Divisor& divisor() const { return divisor_; }

private:
    Divisor divisor_;
    std::vector<std::complex<double>> zeros_;
    std::vector<int> mult_;
};

std::complex<double> eval_blaschke(const BlaschkeProduct& b, std::complex<double> z);

using ComplexFunction = std::function<std::complex<double>(std::complex<double>)>;

/// Zeros of f inside |z| < radius counted by the change of argument along
/// n_samples points of the circle. Throws NumericalFailure when consecutive
/// phase steps exceed pi/2 or |f| < 1e-13 on a sample.
long winding_zero_count(const ComplexFunction& f, double radius, std::size_t n_samples = 4096);

struct BlaschkeConditionReport {
    double sum = 0.0;
    bool convergent_indicated = false;
};

/// Sum of multiplicity * (1 - r_k); finite divisors always indicate convergence.
BlaschkeConditionReport blaschke_condition(const Divisor& z);

}  // namespace diskzero
