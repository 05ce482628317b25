#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "diskzero/charge.hpp"
#include "diskzero/gauge.hpp"
#include "diskzero/periodic.hpp"
#include "diskzero/zeros.hpp"

namespace diskzero {

/// Parametric zero sequences in the disk, emitted up to a cutoff 1 - eps.
class SequenceGenerator {
public:
    /// r_k = 1 - k^-alpha for k >= 1.
    struct PowerLaw {
        double alpha;
    };
    /// r_k = 1 - q^k for k >= 1.
    struct Geometric {
        double q;
    };
    struct Explicit {
        Divisor divisor;
    };
    using Kind = std::variant<PowerLaw, Geometric, Explicit>;

    /// Fixed angle theta0, or the Weyl sequence 2 pi {k phi} when nullopt.
    static SequenceGenerator power_law(double alpha, std::optional<double> theta0 = 0.0);
    static SequenceGenerator geometric(double q, std::optional<double> theta0 = 0.0);
    static SequenceGenerator explicit_divisor(Divisor divisor);

    /// Calls fn(r, theta, multiplicity) for every point with r < 1 - eps, in
    /// increasing k. Throws when more than max_points would be produced.
    void for_each(double eps, const std::function<void(double, double, int)>& fn,
                  std::size_t max_points = 50'000'000) const;
    Divisor truncate(double eps) const;

    const Kind& kind() const { return kind_; }
    const std::optional<double>& theta0() const { return theta0_; }
    std::string describe() const;

private:
    SequenceGenerator(Kind k, std::optional<double> theta0) : kind_(std::move(k)), theta0_(theta0) {}
    Kind kind_;
    std::optional<double> theta0_;
};

/// Thrown when (g, h, rho) fall outside the admissible classes; carries the
/// reports that failed.
class PreconditionError : public std::invalid_argument {
public:
    PreconditionError(const std::string& what, GaugeClassReport gauge, TrigConvexityReport trig, double h_min,
                      double h_max)
        : std::invalid_argument(what), gauge(gauge), trig(std::move(trig)), h_min(h_min), h_max(h_max) {}

    GaugeClassReport gauge;
    TrigConvexityReport trig;
    double h_min;
    double h_max;
};

/// A (g, h, rho) triple that passed validation. h may have been rescaled.
struct CheckedWeights {
    GrowthGauge g;
    PeriodicFunction h;
    double rho;
    bool rescaled = false;
};

/// Requires the gauge class checks (with g(1) <= 1), h trig-convex at rho and
/// h(theta) in [0, 1]. With rescale, h is replaced by h / max h first.
CheckedWeights validate_weights(const GrowthGauge& g, const PeriodicFunction& h, double rho, bool rescale = false);

using USide = std::variant<Divisor, DiskCharge>;

struct InequalityReport {
    double lhs = 0.0;
    double rhs_integral = 0.0;
    double gap = 0.0;
    double epsilon = 0.0;
    std::string g_descriptor;
    std::string h_descriptor;
    double rho = 0.0;
};

InequalityReport main_inequality_sides(const USide& u_side, const DiskCharge& m_charge, const CheckedWeights& w,
                                       double eps);
InequalityReport main_inequality_sides(const USide& u_side, const DiskCharge& m_charge, const GrowthGauge& g,
                                       const PeriodicFunction& h, double rho, double eps);

struct FamilyMember {
    GrowthGauge g;
    PeriodicFunction h;
    double rho;
};

struct EmpiricalConstant {
    double value = 0.0;  // max over members of max(0, gap)
    std::size_t argmax = 0;
    std::vector<InequalityReport> cells;
};

/// Errors from a member are rethrown as std::invalid_argument naming its index.
EmpiricalConstant empirical_constant(const USide& u_side, const DiskCharge& m_charge,
                                     const std::vector<FamilyMember>& family, double eps);
EmpiricalConstant empirical_constant(const USide& u_side, const DiskCharge& m_charge,
                                     const std::vector<CheckedWeights>& family, double eps);

enum class Classification { ForcesZero, Inconclusive };
const char* to_string(Classification c);

struct UniquenessOptions {
    std::size_t levels = 20;  // J
    std::size_t window = 3;   // K
    double tau = 1e-3;
};

struct UniquenessAudit {
    std::vector<double> epsilons;  // 2^-j, j = 1..J
    std::vector<double> majorant_partials;
    std::vector<double> zero_partials;
    bool majorant_stalls = false;
    bool zeros_grow = false;
    Classification classification = Classification::Inconclusive;
};

using MSide = std::variant<DiskCharge, SequenceGenerator>;

/// Partial sums of both uniqueness conditions along eps_j = 2^-j. The last K
/// increments of the M partials must each be <= tau * current value (stall) and
/// those of the Z partials each > tau * current value (growth) for ForcesZero.
UniquenessAudit uniqueness_audit(const SequenceGenerator& z, const MSide& m, const GrowthGauge& g,
                                 const PeriodicFunction& h, const UniquenessOptions& opts = {});

/// Sum of (1 - r_k) over the truncation at each eps_j = 2^-j, j = 1..levels.
std::vector<double> blaschke_partials(const SequenceGenerator& z, std::size_t levels);

}  // namespace diskzero
