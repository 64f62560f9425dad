#pragma once

#include "relcr/flags.hpp"
#include "relcr/polynomial.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace relcr {

enum class FormKind { symplectic, orthogonal };
std::string form_kind_name(FormKind kind);

// Nondegenerate symmetric or alternating bilinear form given by its Gram
// matrix: b(x, y) = x^T G y.
class BilinForm {
 public:
  BilinForm() = default;
  // Throws std::invalid_argument unless the Gram matrix is invertible and
  // of the declared symmetry (symplectic also needs even dimension).
  BilinForm(FormKind kind, Matrix gram);

  // Standard forms: symplectic pairs e_i with e_{n+1-i} (+1 for i <= n/2),
  // orthogonal pairs e_i with e_{n+1-i} with value 1.
  static BilinForm standard(FormKind kind, std::size_t n);

  std::size_t ambient_dim() const { return gram_.rows(); }
  FormKind kind() const { return kind_; }
  const Matrix& gram() const { return gram_; }
  Rational pair(const Vector& x, const Vector& y) const;

 private:
  FormKind kind_ = FormKind::orthogonal;
  Matrix gram_;
};

// { v : b(u, v) = 0 for all u in s }.
Subspace perp(const Subspace& s, const BilinForm& b);
bool is_totally_isotropic(const Subspace& s, const BilinForm& b);
// g* with b(g x, y) = b(x, g* y), i.e. G^{-1} g^T G. Throws on singular g.
Matrix form_adjoint(const Matrix& g, const BilinForm& b);
std::vector<Matrix> form_adjoints(const std::vector<Matrix>& gens, const BilinForm& b);

// K = GL(U) acting on U and trivially on the fixed complement Utilde.
class GLUSplit {
 public:
  GLUSplit() = default;
  // Throws std::invalid_argument unless V = U ⊕ Utilde.
  GLUSplit(Subspace u, Subspace utilde);

  std::size_t ambient_dim() const { return u_.ambient_dim(); }
  const Subspace& u() const { return u_; }
  const Subspace& utilde() const { return utilde_; }
  // Members of S_K: contained in U or containing Utilde.
  bool in_family(const Subspace& s) const;

 private:
  Subspace u_;
  Subspace utilde_;
};

enum class Provenance { seed, spin, dual_spin, sum, intersect, adjoint_stable_solve, user };
std::string provenance_name(Provenance p);

struct PoolMember {
  Subspace space;
  Provenance origin = Provenance::seed;
};

// Finite list of subspaces stable under a generating set, deduplicated
// and sorted canonically.
class SubspacePool {
 public:
  SubspacePool() = default;
  SubspacePool(std::vector<PoolMember> members, bool closed);

  const std::vector<PoolMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  // True when closure under sum and intersection finished under the cap.
  bool closed() const { return closed_; }
  bool contains(const Subspace& s) const;

 private:
  std::vector<PoolMember> members_;
  bool closed_ = true;
};

constexpr std::size_t kDefaultPoolCap = 512;
constexpr std::size_t kDefaultElimCap = 2;

// Characteristic polynomial det(x I - g) by Faddeev-LeVerrier.
UPoly characteristic_polynomial(const Matrix& g);
// Bases of the eigenspaces for the rational eigenvalues of g.
std::vector<Vector> rational_eigenvectors(const Matrix& g);

// Spin of v: the smallest subspace containing v stable under gens.
Subspace spin(const Vector& v, const std::vector<Matrix>& gens);

// Spins of the seeds, annihilators of transpose spins, closed under sum
// and intersection until no new member appears or the cap is reached.
// Empty seeds select the standard basis plus rational eigenvectors of
// every generator.
SubspacePool build_pool(const GroupH& h, const std::vector<Matrix>& extra_gens,
                        const std::vector<Vector>& seeds, std::size_t cap = kDefaultPoolCap);

// Complements of u parameterized as graphs of maps phi: C0 -> u, where C0
// is the coordinate complement of u. The unknowns are the coordinates of
// phi(c_j) in u's basis, j-major.
struct ComplementFamily {
  Subspace u;
  Subspace base;  // C0
  Matrix equations;  // linear system on the unknowns
  Vector rhs;
  AffineResult solution;

  bool empty() const { return std::holds_alternative<EmptySolution>(solution); }
  const AffineSolution& affine() const { return std::get<AffineSolution>(solution); }
  std::size_t dimension() const { return empty() ? 0 : affine().dimension(); }
  // Basis vectors c_j + phi(c_j) for the given unknown vector.
  std::vector<Vector> spanning_vectors(const Vector& unknowns) const;
  // Member of the family at the given affine parameters.
  Subspace at(const Vector& parameters) const;
  // Spanning vectors with entries affine in the family parameters.
  std::vector<std::vector<Poly>> symbolic_vectors() const;
};

// Every complement W of u stable under gens, with W ⊆ inside and
// W ⊇ containing when given. Throws std::invalid_argument if u is not
// stable under gens.
ComplementFamily stable_complements(const Subspace& u, const std::vector<Matrix>& gens,
                                    const std::optional<Subspace>& inside = std::nullopt,
                                    const std::optional<Subspace>& containing = std::nullopt);
ComplementFamily stable_complements(const Subspace& u, const GroupH& h,
                                    const std::optional<Subspace>& inside = std::nullopt,
                                    const std::optional<Subspace>& containing = std::nullopt);

enum class TriValue { relcr_witnessed, not_relcr_witnessed, inconclusive };
std::string tri_value_name(TriValue v);

struct OppositePair {
  Flag flag;
  Flag opposite;
};

// y^T A = 0, y^T b != 0 for the complement system of one S_K side.
struct LinearEmptiness {
  std::string side;
  Matrix equations;
  Vector rhs;
  Vector certificate;
};

// The affine family of linearly admissible complements together with the
// polynomial conditions that no rational parameter satisfies.
struct PolynomialEmptiness {
  AffineSolution family;
  std::vector<Poly> equations;
  SolveOutcome outcome;
  std::optional<bool> discriminant_confirms;
};

struct Refutation {
  Flag flag;  // the H-stable member of MF_K without an H-stable opposite
  std::vector<LinearEmptiness> linear;
  std::optional<PolynomialEmptiness> polynomial;
};

struct TriVerdict {
  TriValue value = TriValue::relcr_witnessed;
  std::vector<OppositePair> witnesses;
  std::optional<Refutation> refutation;
  std::string inconclusive_reason;
  std::optional<AffineSolution> open_family;
  bool pool_closed = true;
  std::size_t candidates = 0;
};

// Independent check of a refutation: linear certificates are verified
// directly, polynomial ones are re-evaluated from the family and, with at
// most one parameter and degree two, checked by explicit discriminants.
bool recheck_refutation(const Refutation& r);

// Second, direct check: each emptiness claim (linear system or polynomial
// conditions) is rewritten as polynomial equations in its unknowns,
// variables occurring linearly are substituted away, and the remaining
// system in at most one variable is decided from explicit discriminants.
// nullopt when some part cannot be reduced that far.
std::optional<bool> discriminant_recheck(const Refutation& r);

TriVerdict relcr_glu(const GroupH& h, const GLUSplit& split, const SubspacePool& pool);
TriVerdict relcr_classical(const GroupH& h, const BilinForm& b, const SubspacePool& pool,
                           std::size_t elim_dim_cap = kDefaultElimCap);

// Flags in F_K for the given K shapes.
bool is_glu_flag(const Flag& f, const GLUSplit& split);
// U_1 ⊆ ... ⊆ U_r ⊆ U_r^⊥ ⊆ ... ⊆ U_1^⊥: the chain is closed under ⊥.
bool is_classical_flag(const Flag& f, const BilinForm& b);
// Flag U ⊆ U^⊥ (U totally isotropic), collapsing to (U) when U = U^⊥.
Flag isotropic_flag(const Subspace& u, const BilinForm& b);

// Solves the polynomial conditions on an affine family. Shared by the
// classical and G2 checkers.
struct FamilySearch {
  enum class Status { found, empty, unknown };
  Status status = Status::unknown;
  Vector parameters;
  std::vector<Poly> equations;
  SolveOutcome outcome;
  std::string reason;
};
FamilySearch search_family(std::size_t nparams, const std::vector<Poly>& equations, std::size_t elim_dim_cap);

}  // namespace relcr
