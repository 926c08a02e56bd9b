// JSON file formats: matrices, complex pairs, algebra/map/functional
// descriptors and catalog verdicts.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "roal/catalog.hpp"
#include "roal/maps.hpp"

namespace roal {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input whose dimensions do not fit together.
class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// {"dim": n, "entries": [...]} for square matrices; rectangular ones use
/// {"rows": r, "cols": c, "entries": [...]}. Non-finite numbers are written as
/// the strings "inf", "-inf" and "nan".
Json matrix_to_json(const RealMatrix& m);
RealMatrix matrix_from_json(const Json& j);

Json complex_to_json(const ComplexPair& p);
ComplexPair complex_from_json(const Json& j);

enum class CloseUnder { none, jordan, assoc };

struct AlgebraSpec {
  std::string name;
  std::size_t ambient_dim = 0;
  AlgebraKind kind = AlgebraKind::operator_space;
  std::vector<RealMatrix> generators;
  CloseUnder close_under = CloseUnder::none;
};

Json algebra_to_json(const AlgebraSpec& a);
AlgebraSpec algebra_from_json(const Json& j);
/// Span, Jordan closure or associative closure of the generators. Throws
/// ClosureBlowup when a closure exceeds its dimension budget.
Subspace generated_subspace(const AlgebraSpec& a);
/// The generated subspace, validated against the kind. Throws
/// InputError on an empty span and std::invalid_argument when the closure
/// flags of the kind fail.
AlgebraDescriptor materialize(const AlgebraSpec& a, const ToleranceConfig& tol = {});

/// "domain" holds either an inline algebra object or a path, resolved
/// relative to `base`.
struct MapSpec {
  AlgebraSpec domain;
  std::size_t codomain_dim = 0;
  std::vector<RealMatrix> images;  // images of the domain generators
};
Json map_to_json(const MapSpec& m);
MapSpec map_from_json(const Json& j, const std::filesystem::path& base = {});
/// The map on the span of the generators, with images of the orthonormal
/// basis obtained by least squares. Throws DimensionMismatch when the counts
/// or shapes disagree and InputError when the generator images are
/// inconsistent.
LinearMap materialize(const MapSpec& m, const AlgebraDescriptor& domain);

struct FunctionalSpec {
  AlgebraSpec domain;
  RealMatrix riesz;
};
Json functional_to_json(const FunctionalSpec& f);
FunctionalSpec functional_from_json(const Json& j, const std::filesystem::path& base = {});

Json tolerance_to_json(const ToleranceConfig& t);
ToleranceConfig tolerance_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

/// Reads and parses a JSON file; failures become InputError.
Json read_json_file(const std::filesystem::path& p);
void write_json_file(const std::filesystem::path& p, const Json& j);

}  // namespace roal
