#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "diskzero/charge.hpp"
#include "diskzero/gauge.hpp"
#include "diskzero/periodic.hpp"
#include "diskzero/testfn.hpp"
#include "diskzero/verify.hpp"
#include "diskzero/zeros.hpp"

namespace diskzero {

using Json = nlohmann::ordered_json;

/// Malformed or out-of-domain user input.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

PeriodicFunction periodic_from_json(const Json& j);
Json to_json(const PeriodicFunction& h);

GrowthGauge gauge_from_json(const Json& j);
Json to_json(const GrowthGauge& g);

DiskCharge charge_from_json(const Json& j);
Json to_json(const DiskCharge& mu);

Divisor divisor_from_json(const Json& j);
Json to_json(const Divisor& z);

SequenceGenerator generator_from_json(const Json& j);
Json to_json(const SequenceGenerator& z);

/// An array is a divisor; an object with "kind" a generator truncated at eps;
/// any other object a charge.
USide u_side_from_json(const Json& j, double eps);
/// A charge object, or a generator object with "kind".
MSide m_side_from_json(const Json& j);

Json to_json(const TrigConvexityReport& r);
Json to_json(const GaugeClassReport& r);
Json to_json(const GxReport& r);
Json to_json(const SubharmonicityReport& r);
Json to_json(const MembershipReport& r);
Json to_json(const InequalityReport& r);
Json to_json(const UniquenessAudit& a);

/// Serializes with every number printed as %.17g; non-finite numbers become null.
std::string dump_json(const Json& j, int indent = 2);

/// Formats a double with 17 significant digits.
std::string format_number(double x);

}  // namespace diskzero
