#pragma once

#include "relcr/g2.hpp"
#include "relcr/structcr.hpp"
#include "relcr/torus.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace relcr {

using json = nlohmann::json;

// Malformed or inconsistent input documents.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

json to_json(const Rational& q);
json to_json(const Vector& v);
json to_json(const Matrix& m);
json to_json(const Subspace& s);
json to_json(const Flag& f);
json to_json(const TorusK& k);
json to_json(const BilinForm& b);
json to_json(const GLUSplit& s);
json to_json(const UPoly& p);
json to_json(const Poly& p);
json to_json(const AffineSolution& a);
json to_json(const SolveOutcome& s);
json to_json(const SubspacePool& pool);

// Strings "p/q" or "p", or JSON integers.
Rational rational_from_json(const json& j);
Vector vector_from_json(const json& j);
// Array of equal-length rows; cols is used for an empty array.
Matrix matrix_from_json(const json& j, std::size_t cols = 0);
Subspace subspace_from_json(const json& j, std::size_t ambient_dim);
// Either {"ambient_dim": n, "chain": [...]} or a bare chain with n given.
Flag flag_from_json(const json& j, std::size_t ambient_dim = 0);
TorusK torus_from_json(const json& j);
BilinForm form_from_json(const json& j);
GLUSplit glu_from_json(const json& j, std::size_t ambient_dim);
std::vector<Vector> seeds_from_json(const json& j, std::size_t ambient_dim);

// Flag types with 1-based coordinates: {"blocks": [[...]], "dims": [...]}.
json flag_type_to_json(const FlagType& ft, const WeightClasses& classes);
json typed_flag_to_json(const TypedFlag& t, const TorusFlagCatalog& catalog);
json to_json(const TorusVerdict& v, const TorusFlagCatalog& catalog);
json to_json(const CrosscheckReport& r, const TorusFlagCatalog& catalog);
json to_json(const TriVerdict& v);

// G2 fixture: sparse structure constants (1-based indices), Gram matrix
// and torus lattice.
json g2_fixture_to_json(const G2Data& d);
G2Data g2_fixture_from_json(const json& j);

json parse_json_file(const std::string& path);

}  // namespace relcr
