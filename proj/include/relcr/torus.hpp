#pragma once

#include "relcr/flags.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace relcr {

using Weights = std::vector<std::int64_t>;

// A subtorus of the diagonal torus of GL_n, given by a basis of its
// cocharacter lattice. Row i of the basis is the weight vector of the
// i-th basis cocharacter; column j is the character of K on e_j.
class TorusK {
 public:
  TorusK() = default;
  // Throws std::invalid_argument if the rows are not linearly independent
  // or have the wrong length.
  TorusK(std::size_t ambient_dim, std::vector<Weights> lattice_basis);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<Weights>& lattice_basis() const { return basis_; }

  // Weight of coordinate j, as a vector of length rank().
  Weights character(std::size_t coord) const;
  // Weight vector of the cocharacter sum_i coefficients[i] * basis[i].
  Weights cocharacter_weights(const Weights& coefficients) const;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Weights> basis_;
};

// Coordinates grouped by equal characters, ordered by smallest member.
struct WeightClasses {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;

  std::size_t count() const { return classes.size(); }
};

WeightClasses weight_classes(const TorusK& k);

// Chain span{e_i : w_i >= t} for the distinct values t of w, V omitted.
Flag flag_from_weights(const Weights& w);

// Ordered partition of the weight classes; block 0 carries the largest
// weight. A single block is the trivial flag.
struct FlagType {
  std::vector<std::vector<std::size_t>> blocks;

  bool is_trivial() const { return blocks.size() <= 1; }
  friend bool operator==(const FlagType& a, const FlagType& b) { return a.blocks == b.blocks; }
  friend bool operator<(const FlagType& a, const FlagType& b);
};

struct CocharacterWitness {
  Weights coefficients;
};

struct TypedFlag {
  FlagType type;
  CocharacterWitness witness;
};

class MalformedPartition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ClassBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

constexpr std::size_t kDefaultClassBound = 9;

// Decides whether some cocharacter of K realizes the ordered partition;
// on success returns a primitive integer witness.
std::optional<CocharacterWitness> feasible(const FlagType& ft, const TorusK& k);

Flag flag_of_type(const FlagType& ft, const WeightClasses& classes, std::size_t ambient_dim);
GradedDecomposition decomposition_of_type(const FlagType& ft, const WeightClasses& classes, std::size_t ambient_dim);
FlagType opposite_type(const FlagType& ft);
// Ordered partition of the coordinates induced by w, over the given classes.
FlagType type_of_weights(const Weights& w, const WeightClasses& classes);

std::vector<TypedFlag> enumerate_flag_types(const TorusK& k, std::size_t class_bound = kDefaultClassBound);
std::vector<TypedFlag> minimal_flags(const TorusK& k, std::size_t class_bound = kDefaultClassBound);

// F_K and MF_K for a torus, computed once and shared by the checkers.
class TorusFlagCatalog {
 public:
  explicit TorusFlagCatalog(TorusK k, std::size_t class_bound = kDefaultClassBound);

  const TorusK& torus() const { return torus_; }
  const WeightClasses& classes() const { return classes_; }
  // Canonical order: by number of blocks, then lexicographically.
  const std::vector<TypedFlag>& all() const { return all_; }
  const std::vector<TypedFlag>& minimal() const { return minimal_; }
  bool contains(const FlagType& ft) const { return members_.count(ft) > 0; }
  const TypedFlag* find(const FlagType& ft) const;

  Flag flag(const FlagType& ft) const { return flag_of_type(ft, classes_, torus_.ambient_dim()); }
  GradedDecomposition pieces(const FlagType& ft) const {
    return decomposition_of_type(ft, classes_, torus_.ambient_dim());
  }

 private:
  TorusK torus_;
  WeightClasses classes_;
  std::vector<TypedFlag> all_;
  std::vector<TypedFlag> minimal_;
  std::set<FlagType> members_;
};

// Every nontrivial member of F_K whose chain is not the union of the
// chains of the minimal flags it refines. Empty when the union property
// holds throughout.
std::vector<FlagType> minimal_cover_failures(const TorusFlagCatalog& catalog);

struct Refinement {
  std::vector<std::int64_t> multipliers;
  Weights combined;
};

class IncompatibleCocharacters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Positive integers n_i with flag_from_weights(sum n_i w_i) the common
// refinement of the inputs. n_i = M^(m-i), M = 1 + 2 m max|entry|; the
// result is verified before returning.
Refinement common_refinement(const std::vector<Weights>& ws, bool require_compatible);
// True when one total order of the coordinates is weakly compatible with
// every input (a common Borel subgroup).
bool have_common_borel(const std::vector<Weights>& ws);

enum class Method { definition, minimal, levi, all_opposites };
std::string method_name(Method m);

struct TorusVerdict {
  bool relcr = true;
  Method method = Method::definition;
  // NotRelCR: the offending type. Levi RelCR: the Levi type λ*.
  std::optional<TypedFlag> witness;
  std::string violated_condition;
};

TorusVerdict relcr_torus_definition(const GroupH& h, const TorusFlagCatalog& catalog);
TorusVerdict relcr_torus_minimal(const GroupH& h, const TorusFlagCatalog& catalog);
TorusVerdict relcr_torus_levi(const GroupH& h, const TorusFlagCatalog& catalog);
// Brute force: every H-stable member of F_K has an H-stable opposite
// somewhere in F_K, searched with verify_opposite.
TorusVerdict relcr_torus_all_opposites(const GroupH& h, const TorusFlagCatalog& catalog);

TorusVerdict relcr_torus_definition(const GroupH& h, const TorusK& k);
TorusVerdict relcr_torus_minimal(const GroupH& h, const TorusK& k);
TorusVerdict relcr_torus_levi(const GroupH& h, const TorusK& k);

struct CrosscheckReport {
  bool relcr = true;
  TorusVerdict definition;
  TorusVerdict minimal;
  TorusVerdict levi;
};

// Runs the three checkers; throws InternalInconsistency on disagreement.
CrosscheckReport relcr_torus_crosscheck(const GroupH& h, const TorusFlagCatalog& catalog);
CrosscheckReport relcr_torus_crosscheck(const GroupH& h, const TorusK& k);

struct TorusFactor {
  TorusK torus;
  std::vector<std::size_t> block;
};

// Image of K under projection to GL(span of block), extended by the
// identity on the remaining coordinates.
TorusFactor project_torus(const TorusK& k, const std::vector<std::size_t>& block);

struct ProductReport {
  CrosscheckReport combined;
  std::vector<CrosscheckReport> factors;
  bool h_preserves_blocks = false;
  bool k_is_product = false;
  bool equivalence_asserted = false;
};

// Verdicts for K and for each factor. When H preserves the block
// decomposition and K is the product of the factors, the product
// verdict must equal the conjunction of the factor verdicts; a violation
// throws InternalInconsistency. K defaults to the product of the factors.
ProductReport relcr_torus_product(const GroupH& h, const std::vector<TorusFactor>& factors,
                                  const std::optional<TorusK>& combined = std::nullopt);

}  // namespace relcr
