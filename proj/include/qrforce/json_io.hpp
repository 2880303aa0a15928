#pragma once

#include "qrforce/appendix.hpp"
#include "qrforce/certifier.hpp"
#include "qrforce/exceptional.hpp"
#include "qrforce/permuton.hpp"

#include <json.hpp>

namespace qrf {

using Json = nlohmann::json;

// Rationals are "p/q" strings (or "p"), matrices arrays of rows.
Json to_json(const Rational &q);
Json to_json(const RatVector &v);
Json to_json(const RatMatrix &m);
Json to_json(const Permutation &p);
Json to_json(const Inertia &in);
Json to_json(const StepPermuton &p);
Json to_json(const NonForcingEvidence &e);
Json to_json(const AppendixItem &item);
Json to_json(const FactReport &r);
Json to_json(const SolvedWitness &w);
Json to_json(const WitnessBundle &b);
Json to_json(const BivariatePoly &p);

Rational rational_from_json(const Json &j);
RatVector vector_from_json(const Json &j);
RatMatrix matrix_from_json(const Json &j);
Permutation permutation_from_json(const Json &j);
Inertia inertia_from_json(const Json &j);
// {"k": int, "A": [[...]]} or {"perms": [...], "weights": [...]}.
StepPermuton permuton_from_json(const Json &j);
NonForcingEvidence evidence_from_json(const Json &j);

} // namespace qrf
