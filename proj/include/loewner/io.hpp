#pragma once

#include <json.hpp>
#include <string>

#include "loewner/definiteness.hpp"
#include "loewner/funcs.hpp"
#include "loewner/intervals.hpp"
#include "loewner/loewner_matrix.hpp"
#include "loewner/matorder.hpp"
#include "loewner/search.hpp"

namespace loewner {

using Json = nlohmann::ordered_json;

// Reals: finite values as numbers, infinities as "inf"/"-inf", NaN as null.
Json real_to_json(double x);
double real_from_json(const Json& j);

Json to_json(const Interval& j);
Interval interval_from_json(const Json& j);

/// {"kind": ..., params...}; nested combinators under "inner"/"lhs"/"rhs".
Json to_json(const FunctionDescriptor& f);
FunctionDescriptor function_from_json(const Json& j);  // ConfigError on bad input

Json to_json(const Matrix& m);  // row-major array of rows
Matrix matrix_from_json(const Json& j);
Json to_json(const Vector& v);

Json to_json(const LoewnerMatrix& m);
Json to_json(const DefinitenessVerdict& v);
Json to_json(const OrderWitness& w);
Json to_json(const OrderCheckReport& r);
Json to_json(const Witness& w);
Witness witness_from_json(const Json& j);
Json to_json(const HuntResult& r);
Json to_json(const SweepCell& c);
Json to_json(const ClassificationTable& t);
Json to_json(const ConditionOutcome& c);
Json to_json(const ProbeReport& r);
Json to_json(const BoundaryEstimate& e);
Json to_json(const IdentityResidual& r);
Json to_json(const TransferComparison& c);

std::string format_real(double x);  // shortest round-trip form
std::string matrix_to_csv(const Matrix& m);
std::string table_to_csv(const ClassificationTable& t);

}  // namespace loewner
