#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pfspec/conjugacy/conjugacy.hpp"
#include "pfspec/observables/observables.hpp"
#include "pfspec/spectra/spectra.hpp"
#include "pfspec/twosided/twosided.hpp"

namespace pfspec::io {

using json = nlohmann::ordered_json;
using exact::Scalar;
using exact::SMatrix;
using exact::SPoly;

/// Exact scalars are always strings: "num/den" or "a/b+c/e√5".
json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);
json to_json(const std::vector<Scalar>& v);
std::vector<Scalar> scalars_from_json(const json& j);

json to_json(const SPoly& p);
SPoly poly_from_json(const json& j);

json to_json(const observables::PolyObservable& f);
observables::PolyObservable poly_observable_from_json(const json& j);
/// Two coefficient arrays [q0, q1].
json to_json(const observables::BlockObservable& f);
observables::BlockObservable block_observable_from_json(const json& j);
/// {depth, values: {"0,1": "1/2", ...}}
json to_json(const observables::CylFun& f);
observables::CylFun cylfun_from_json(const json& j);

/// {name, beta, adjacency, measure: {kind, ...}, sidedness}
json to_json(const symdyn::ShiftSystem& sys);
/// Unknown fields raise ConfigError.
symdyn::ShiftSystem system_from_json(const json& j);
/// A preset name, or the path of a JSON system file.
symdyn::ShiftSystem load_system(const std::string& preset_or_path);

/// {system, basis, degree, labels, eigenvalues, eigenpolys, duals}
json to_json(const spectra::EigenSystem& es);
spectra::EigenSystem eigen_system_from_json(const json& j);

json to_json(const spectra::VectorResolvent& r);
spectra::VectorResolvent resolvent_from_json(const json& j);

json to_json(const exact::RationalFunction& r);
exact::RationalFunction ratfun_from_json(const json& j);

json to_json(const twosided::TensorCoeffs& c);
twosided::TensorCoeffs tensor_from_json(const json& j);

/// {epsilon, M, N, entries: [{i, j, m, n, value}]}: row (i, j), column (m, n).
json to_json(const twosided::TwoSidedOperator& op);
twosided::TwoSidedOperator operator_from_json(const json& j);

/// {k, eigenvalue, algebraic, geometric, blocks, truncation: {M, N}, stable, ranks}
json to_json(const twosided::JordanReport& r);
twosided::JordanReport jordan_from_json(const json& j);

json to_json(const twosided::PoleOrderResult& r);
twosided::PoleOrderResult pole_order_from_json(const json& j);

json to_json(const conjugacy::SemiconjugacyReport& r);
/// Summary without the per-bin table.
json summary_json(const conjugacy::HistogramReport& r);

/// Throws ConfigError if `j` is not an object or has a key outside `allowed`.
void require_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where);

}  // namespace pfspec::io
