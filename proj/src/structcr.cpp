#include "relcr/structcr.hpp"

#include "relcr/parallel.hpp"
#include "relcr/torus.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace relcr {

std::string form_kind_name(FormKind kind) {
  return kind == FormKind::symplectic ? "symplectic" : "orthogonal";
}

BilinForm::BilinForm(FormKind kind, Matrix gram) : kind_(kind), gram_(std::move(gram)) {
  if (!gram_.is_square() || gram_.rows() == 0) throw std::invalid_argument("Gram matrix must be square and nonempty");
  const Matrix t = gram_.transpose();
  if (kind_ == FormKind::orthogonal) {
    if (!(t == gram_)) throw std::invalid_argument("orthogonal Gram matrix must be symmetric");
  } else {
    if (!(t == gram_.scaled(-1))) throw std::invalid_argument("symplectic Gram matrix must be antisymmetric");
    if (gram_.rows() % 2 != 0) throw std::invalid_argument("symplectic form needs even dimension");
  }
  if (!is_invertible(gram_)) throw std::invalid_argument("Gram matrix must be invertible");
}

BilinForm BilinForm::standard(FormKind kind, std::size_t n) {
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, n - 1 - i) = (kind == FormKind::symplectic && 2 * i >= n) ? -1 : 1;
  }
  return BilinForm(kind, std::move(g));
}

Rational BilinForm::pair(const Vector& x, const Vector& y) const { return dot(x, gram_.apply(y)); }

Subspace perp(const Subspace& s, const BilinForm& b) {
  if (s.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("perp: dimension mismatch");
  return Subspace::span(s.ambient_dim(), kernel(s.basis() * b.gram()));
}

bool is_totally_isotropic(const Subspace& s, const BilinForm& b) {
  if (s.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("is_totally_isotropic: dimension mismatch");
  return (s.basis() * b.gram() * s.basis().transpose()).is_zero();
}

Matrix form_adjoint(const Matrix& g, const BilinForm& b) {
  if (g.rows() != b.ambient_dim() || !g.is_square()) throw std::invalid_argument("form_adjoint: dimension mismatch");
  if (!is_invertible(g)) throw std::invalid_argument("form_adjoint: singular matrix");
  return *inverse(b.gram()) * g.transpose() * b.gram();
}

std::vector<Matrix> form_adjoints(const std::vector<Matrix>& gens, const BilinForm& b) {
  std::vector<Matrix> out;
  for (const auto& g : gens) out.push_back(form_adjoint(g, b));
  return out;
}

GLUSplit::GLUSplit(Subspace u, Subspace utilde) : u_(std::move(u)), utilde_(std::move(utilde)) {
  if (!are_complements(u_, utilde_)) throw std::invalid_argument("GLUSplit: U and Utilde must be complements");
}

bool GLUSplit::in_family(const Subspace& s) const {
  return subspace_contains(u_, s) || subspace_contains(s, utilde_);
}

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::seed: return "seed";
    case Provenance::spin: return "spin";
    case Provenance::dual_spin: return "dual_spin";
    case Provenance::sum: return "sum";
    case Provenance::intersect: return "intersect";
    case Provenance::adjoint_stable_solve: return "adjoint_stable_solve";
    case Provenance::user: return "user";
  }
  return "unknown";
}

SubspacePool::SubspacePool(std::vector<PoolMember> members, bool closed) : closed_(closed) {
  std::map<Subspace, Provenance> unique;
  for (auto& m : members) unique.emplace(m.space, m.origin);
  for (auto& [s, p] : unique) members_.push_back({s, p});
}

bool SubspacePool::contains(const Subspace& s) const {
  return std::any_of(members_.begin(), members_.end(), [&](const PoolMember& m) { return m.space == s; });
}

UPoly characteristic_polynomial(const Matrix& g) {
  if (!g.is_square()) throw std::invalid_argument("characteristic_polynomial: square matrix required");
  const std::size_t n = g.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = g * m + Matrix::identity(n).scaled(c[n - k + 1]);
    const Matrix am = g * m;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / static_cast<long>(k);
  }
  return UPoly(std::move(c));
}

std::vector<Vector> rational_eigenvectors(const Matrix& g) {
  std::vector<Vector> out;
  const auto roots = rational_roots(characteristic_polynomial(g));
  for (const auto& lambda : roots.roots) {
    const Matrix shifted = g - Matrix::identity(g.rows()).scaled(lambda);
    for (const auto& v : kernel(shifted).row_list()) out.push_back(v);
  }
  return out;
}

Subspace spin(const Vector& v, const std::vector<Matrix>& gens) {
  const std::size_t n = v.size();
  std::vector<Vector> basis;
  Subspace current = Subspace::zero(n);
  std::vector<Vector> queue{v};
  while (!queue.empty()) {
    Vector w = std::move(queue.back());
    queue.pop_back();
    if (current.contains_vector(w)) continue;
    basis.push_back(w);
    current = Subspace::span(n, basis);
    for (const auto& g : gens) queue.push_back(g.apply(w));
  }
  return current;
}

SubspacePool build_pool(const GroupH& h, const std::vector<Matrix>& extra_gens, const std::vector<Vector>& seeds,
                        std::size_t cap) {
  const std::size_t n = h.ambient_dim();
  std::vector<Matrix> gens = h.generators();
  for (const auto& g : extra_gens) {
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("build_pool: extra generator has wrong size");
    gens.push_back(g);
  }
  std::vector<Matrix> transposes;
  for (const auto& g : gens) transposes.push_back(g.transpose());

  std::vector<Vector> seed_vectors = seeds;
  if (seed_vectors.empty()) {
    for (std::size_t i = 0; i < n; ++i) seed_vectors.push_back(unit_vector(n, i));
    for (const auto& g : gens) {
      for (auto& v : rational_eigenvectors(g)) seed_vectors.push_back(std::move(v));
    }
  }

  std::vector<PoolMember> members;
  std::map<Subspace, std::size_t> index;
  bool closed = true;
  auto add = [&](const Subspace& s, Provenance p) {
    if (index.count(s)) return;
    if (members.size() >= cap) {
      closed = false;
      return;
    }
    index.emplace(s, members.size());
    members.push_back({s, p});
  };
  add(Subspace::zero(n), Provenance::seed);
  add(Subspace::whole(n), Provenance::seed);
  for (const auto& v : seed_vectors) {
    if (v.size() != n) throw std::invalid_argument("build_pool: seed has wrong length");
    if (is_zero(v)) continue;
    add(spin(v, gens), seeds.empty() ? Provenance::spin : Provenance::user);
    add(annihilator(spin(v, transposes)), Provenance::dual_spin);
  }
  for (std::size_t i = 0; i < members.size() && closed; ++i) {
    for (std::size_t j = 0; j < i && closed; ++j) {
      const Subspace a = members[i].space;
      const Subspace b = members[j].space;
      add(subspace_sum(a, b), Provenance::sum);
      add(subspace_intersect(a, b), Provenance::intersect);
    }
  }
  return SubspacePool(std::move(members), closed);
}

namespace {

struct Frame {
  std::vector<Vector> c;  // basis of C0
  std::vector<Vector> a;  // basis of u
  Matrix to_coords;       // inverse of [c | a] as columns

  std::size_t k() const { return c.size(); }
  std::size_t d() const { return a.size(); }
  Vector coords(const Vector& v) const { return to_coords.apply(v); }
};

Frame make_frame(const Subspace& u, const Subspace& base) {
  Frame f;
  f.c = base.basis().row_list();
  f.a = u.basis().row_list();
  std::vector<Vector> cols = f.c;
  cols.insert(cols.end(), f.a.begin(), f.a.end());
  const Matrix p = Matrix::from_rows(cols, u.ambient_dim()).transpose();
  f.to_coords = *inverse(p);
  return f;
}

}  // namespace

std::vector<Vector> ComplementFamily::spanning_vectors(const Vector& unknowns) const {
  const auto c = base.basis().row_list();
  const auto a = u.basis().row_list();
  const std::size_t d = a.size();
  std::vector<Vector> out;
  for (std::size_t j = 0; j < c.size(); ++j) {
    Vector w = c[j];
    for (std::size_t i = 0; i < d; ++i) w = add(w, scale(a[i], unknowns[j * d + i]));
    out.push_back(std::move(w));
  }
  return out;
}

Subspace ComplementFamily::at(const Vector& parameters) const {
  if (empty()) throw std::logic_error("ComplementFamily::at on an empty family");
  return Subspace::span(u.ambient_dim(), spanning_vectors(affine().point(parameters)));
}

std::vector<std::vector<Poly>> ComplementFamily::symbolic_vectors() const {
  if (empty()) throw std::logic_error("ComplementFamily::symbolic_vectors on an empty family");
  const auto& sol = affine();
  const std::size_t p = sol.dimension();
  const std::size_t nunk = sol.particular.size();
  std::vector<Poly> unknowns;
  for (std::size_t x = 0; x < nunk; ++x) {
    Poly e = Poly::constant(p, sol.particular[x]);
    for (std::size_t s = 0; s < p; ++s) e = e + Poly::variable(p, s).scaled(sol.homogeneous(s, x));
    unknowns.push_back(std::move(e));
  }
  const auto c = base.basis().row_list();
  const auto a = u.basis().row_list();
  const std::size_t n = u.ambient_dim();
  const std::size_t d = a.size();
  std::vector<std::vector<Poly>> out;
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::vector<Poly> w;
    for (std::size_t coord = 0; coord < n; ++coord) {
      Poly e = Poly::constant(p, c[j][coord]);
      for (std::size_t i = 0; i < d; ++i) {
        if (a[i][coord] != 0) e = e + unknowns[j * d + i].scaled(a[i][coord]);
      }
      w.push_back(std::move(e));
    }
    out.push_back(std::move(w));
  }
  return out;
}

ComplementFamily stable_complements(const Subspace& u, const std::vector<Matrix>& gens,
                                    const std::optional<Subspace>& inside, const std::optional<Subspace>& containing) {
  const std::size_t n = u.ambient_dim();
  for (const auto& g : gens) {
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("stable_complements: generator has wrong size");
    if (!is_stable_under(g, u)) throw std::invalid_argument("stable_complements: u is not stable");
  }
  if (inside && inside->ambient_dim() != n) throw std::invalid_argument("stable_complements: inside dimension mismatch");
  if (containing && containing->ambient_dim() != n)
    throw std::invalid_argument("stable_complements: containing dimension mismatch");

  ComplementFamily fam;
  fam.u = u;
  fam.base = coordinate_complement(u);
  const Frame fr = make_frame(u, fam.base);
  const std::size_t k = fr.k();
  const std::size_t d = fr.d();
  const std::size_t nunk = k * d;
  auto var = [d](std::size_t j, std::size_t i) { return j * d + i; };

  Matrix eqs(0, nunk);
  Vector rhs;
  for (const auto& g : gens) {
    // Action on u in u-coordinates, and on C0 modulo u.
    Matrix gu(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      const Vector co = fr.coords(g.apply(fr.a[i]));
      for (std::size_t m = 0; m < d; ++m) gu(m, i) = co[k + m];
    }
    for (std::size_t j = 0; j < k; ++j) {
      const Vector co = fr.coords(g.apply(fr.c[j]));
      for (std::size_t m = 0; m < d; ++m) {
        Vector row(nunk);
        for (std::size_t i = 0; i < d; ++i) row[var(j, i)] += gu(m, i);
        for (std::size_t l = 0; l < k; ++l) row[var(l, m)] -= co[l];
        eqs.append_row(row);
        rhs.push_back(-co[k + m]);
      }
    }
  }
  if (inside) {
    for (const auto& y : annihilator(*inside).basis().row_list()) {
      for (std::size_t j = 0; j < k; ++j) {
        Vector row(nunk);
        for (std::size_t i = 0; i < d; ++i) row[var(j, i)] = dot(y, fr.a[i]);
        eqs.append_row(row);
        rhs.push_back(-dot(y, fr.c[j]));
      }
    }
  }
  if (containing) {
    for (const auto& t : containing->basis().row_list()) {
      const Vector co = fr.coords(t);
      for (std::size_t m = 0; m < d; ++m) {
        Vector row(nunk);
        for (std::size_t j = 0; j < k; ++j) row[var(j, m)] = co[j];
        eqs.append_row(row);
        rhs.push_back(co[k + m]);
      }
      // With d = 0 the only complement is C0 itself.
      if (d == 0) {
        bool inside_base = fam.base.contains_vector(t);
        if (!inside_base) {
          eqs.append_row(Vector(nunk));
          rhs.push_back(1);
        }
      }
    }
  }
  fam.equations = eqs;
  fam.rhs = rhs;
  fam.solution = solve_affine(eqs, rhs);
  return fam;
}

ComplementFamily stable_complements(const Subspace& u, const GroupH& h, const std::optional<Subspace>& inside,
                                    const std::optional<Subspace>& containing) {
  return stable_complements(u, h.generators(), inside, containing);
}

std::string tri_value_name(TriValue v) {
  switch (v) {
    case TriValue::relcr_witnessed: return "relcr_witnessed";
    case TriValue::not_relcr_witnessed: return "not_relcr_witnessed";
    case TriValue::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// p(orig) with orig_i = subs[i], subs in new_nvars variables.
Poly compose(const Poly& p, const std::vector<Poly>& subs, std::size_t new_nvars) {
  Poly out(new_nvars);
  for (const auto& [e, c] : p.terms()) {
    Poly term = Poly::constant(new_nvars, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) term = term * subs[i];
    out = out + term;
  }
  return out;
}

std::vector<Poly> nonzero(const std::vector<Poly>& ps) {
  std::vector<Poly> out;
  for (const auto& p : ps) {
    if (!p.is_zero()) out.push_back(p);
  }
  return out;
}

// Small deterministic grid of parameter points: zero, then ±unit vectors,
// then all vectors with entries in {-1, 0, 1} when that is small.
std::vector<Vector> probe_points(std::size_t nparams) {
  std::vector<Vector> out{Vector(nparams)};
  for (std::size_t i = 0; i < nparams; ++i) {
    for (int s : {1, -1}) {
      Vector v(nparams);
      v[i] = s;
      out.push_back(v);
    }
  }
  if (nparams <= 6) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < nparams; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      Vector v(nparams);
      std::size_t c = code;
      for (std::size_t i = 0; i < nparams; ++i) {
        v[i] = static_cast<long>(c % 3) - 1;
        c /= 3;
      }
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

FamilySearch search_family(std::size_t nparams, const std::vector<Poly>& equations, std::size_t elim_dim_cap) {
  FamilySearch out;
  out.equations = equations;
  // Current variables t relate to the original parameters by orig = subs(t).
  std::size_t nvars = nparams;
  std::vector<Poly> subs;
  for (std::size_t i = 0; i < nparams; ++i) subs.push_back(Poly::variable(nparams, i));
  std::vector<Poly> system = nonzero(equations);

  auto to_original = [&](const Vector& t) {
    Vector orig(nparams);
    for (std::size_t i = 0; i < nparams; ++i) orig[i] = subs[i].eval(t);
    return orig;
  };

  for (;;) {
    for (const auto& p : system) {
      if (p.is_constant()) {
        out.status = FamilySearch::Status::empty;
        out.reason = "a condition reduces to a nonzero constant";
        out.outcome.status = SolveOutcome::Status::empty;
        out.outcome.reason = out.reason;
        return out;
      }
    }
    Matrix a(0, nvars);
    Vector b;
    std::vector<Poly> rest;
    for (const auto& p : system) {
      if (p.total_degree() <= 1) {
        Vector row(nvars);
        for (const auto& [e, c] : p.terms()) {
          for (std::size_t i = 0; i < nvars; ++i) {
            if (e[i] == 1) row[i] = c;
          }
        }
        a.append_row(row);
        b.push_back(-p.constant_term());
      } else {
        rest.push_back(p);
      }
    }
    if (a.rows() == 0) break;
    const auto lin = solve_affine(a, b);
    if (std::holds_alternative<EmptySolution>(lin)) {
      out.status = FamilySearch::Status::empty;
      out.reason = "the linear conditions are inconsistent";
      out.outcome.status = SolveOutcome::Status::empty;
      out.outcome.reason = out.reason;
      return out;
    }
    const auto& sol = std::get<AffineSolution>(lin);
    const std::size_t next = sol.dimension();
    std::vector<Poly> step;
    for (std::size_t i = 0; i < nvars; ++i) {
      Poly e = Poly::constant(next, sol.particular[i]);
      for (std::size_t s = 0; s < next; ++s) e = e + Poly::variable(next, s).scaled(sol.homogeneous(s, i));
      step.push_back(std::move(e));
    }
    std::vector<Poly> new_subs;
    for (const auto& s : subs) new_subs.push_back(compose(s, step, next));
    subs = std::move(new_subs);
    std::vector<Poly> new_system;
    for (const auto& p : rest) new_system.push_back(compose(p, step, next));
    system = nonzero(new_system);
    nvars = next;
  }

  if (system.empty()) {
    out.status = FamilySearch::Status::found;
    out.parameters = to_original(Vector(nvars));
    return out;
  }
  if (nvars <= std::min<std::size_t>(elim_dim_cap, 2)) {
    out.outcome = rational_solutions(system, nvars);
    switch (out.outcome.status) {
      case SolveOutcome::Status::found:
        out.status = FamilySearch::Status::found;
        out.parameters = to_original(out.outcome.point);
        break;
      case SolveOutcome::Status::empty:
        out.status = FamilySearch::Status::empty;
        out.reason = out.outcome.reason;
        break;
      case SolveOutcome::Status::unknown:
        out.status = FamilySearch::Status::unknown;
        out.reason = out.outcome.reason;
        break;
    }
    return out;
  }
  for (const auto& t : probe_points(nvars)) {
    bool ok = true;
    for (const auto& p : system) {
      if (p.eval(t) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.status = FamilySearch::Status::found;
      out.parameters = to_original(t);
      return out;
    }
  }
  out.status = FamilySearch::Status::unknown;
  out.reason = "family of dimension " + std::to_string(nvars) + " exceeds the elimination cap";
  return out;
}

std::optional<bool> discriminant_recheck(const Refutation& r) {
  bool confirmed = true;
  for (const auto& lin : r.linear) {
    const std::size_t n = lin.equations.cols();
    std::vector<Poly> system;
    for (std::size_t i = 0; i < lin.equations.rows(); ++i) {
      Poly p = Poly::constant(n, -lin.rhs[i]);
      for (std::size_t j = 0; j < n; ++j) {
        if (lin.equations(i, j) != 0) p = p + Poly::variable(n, j).scaled(lin.equations(i, j));
      }
      system.push_back(p);
    }
    const auto res = eliminate_then_discriminant(system);
    if (!res) return std::nullopt;
    confirmed = confirmed && *res;
  }
  if (r.polynomial) {
    const auto res = eliminate_then_discriminant(r.polynomial->equations);
    if (!res) return std::nullopt;
    confirmed = confirmed && *res;
  }
  return confirmed;
}

bool recheck_refutation(const Refutation& r) {
  for (const auto& lin : r.linear) {
    if (!verify_inconsistency(lin.equations, lin.rhs, lin.certificate)) return false;
  }
  if (!r.polynomial) return !r.linear.empty();
  const auto& poly = *r.polynomial;
  const std::size_t nparams = poly.family.dimension();
  for (const auto& p : poly.equations) {
    if (p.nvars() != nparams) return false;
  }
  if (nparams == 0) {
    return std::any_of(poly.equations.begin(), poly.equations.end(),
                       [](const Poly& p) { return !p.is_zero(); });
  }
  const auto disc = discriminant_confirms_empty(poly.equations);
  if (disc) return *disc;
  if (nparams <= 2) return rational_solutions(poly.equations, nparams).status == SolveOutcome::Status::empty;
  return search_family(nparams, poly.equations, 2).status == FamilySearch::Status::empty;
}

Flag isotropic_flag(const Subspace& u, const BilinForm& b) {
  const Subspace up = perp(u, b);
  if (up == u) return Flag(u.ambient_dim(), {u});
  return Flag(u.ambient_dim(), {u, up});
}

bool is_glu_flag(const Flag& f, const GLUSplit& split) {
  if (f.ambient_dim() != split.ambient_dim()) return false;
  return std::all_of(f.chain().begin(), f.chain().end(), [&](const Subspace& s) { return split.in_family(s); });
}

bool is_classical_flag(const Flag& f, const BilinForm& b) {
  if (f.ambient_dim() != b.ambient_dim()) return false;
  for (const auto& s : f.chain()) {
    const Subspace p = perp(s, b);
    if (std::find(f.chain().begin(), f.chain().end(), p) == f.chain().end()) return false;
  }
  return true;
}

namespace {

struct CandidateResult {
  enum class Kind { witness, refuted, unknown } kind = Kind::unknown;
  std::optional<OppositePair> pair;
  std::optional<Refutation> refutation;
  std::string reason;
  std::optional<AffineSolution> family;
};

LinearEmptiness linear_proof(const std::string& side, const ComplementFamily& fam) {
  return {side, fam.equations, fam.rhs, std::get<EmptySolution>(fam.solution).certificate};
}

TriVerdict assemble(const std::vector<Subspace>& candidates, std::vector<CandidateResult> results, bool pool_closed) {
  TriVerdict v;
  v.pool_closed = pool_closed;
  v.candidates = candidates.size();
  for (auto& r : results) {
    if (r.kind == CandidateResult::Kind::refuted) {
      v.value = TriValue::not_relcr_witnessed;
      v.refutation = std::move(r.refutation);
      v.witnesses.clear();
      return v;
    }
  }
  for (auto& r : results) {
    if (r.kind == CandidateResult::Kind::unknown && v.value != TriValue::inconclusive) {
      v.value = TriValue::inconclusive;
      v.inconclusive_reason = r.reason;
      v.open_family = r.family;
    }
    if (r.kind == CandidateResult::Kind::witness) v.witnesses.push_back(*r.pair);
  }
  return v;
}

OppositePair checked_pair(Flag f, Flag g) {
  if (!verify_opposite(f, g)) throw InternalInconsistency("constructed witness is not opposite to its flag");
  return {std::move(f), std::move(g)};
}

}  // namespace

TriVerdict relcr_glu(const GroupH& h, const GLUSplit& split, const SubspacePool& pool) {
  const std::size_t n = h.ambient_dim();
  if (split.ambient_dim() != n) throw std::invalid_argument("relcr_glu: dimension mismatch");
  std::vector<Subspace> candidates;
  for (const auto& m : pool.members()) {
    const auto& s = m.space;
    if (s.is_zero() || s.is_whole()) continue;
    if (split.in_family(s) && h.stabilizes(s)) candidates.push_back(s);
  }
  std::vector<CandidateResult> results(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t idx) {
    const Subspace& w = candidates[idx];
    CandidateResult res;
    const auto containing = stable_complements(w, h, std::nullopt, split.utilde());
    const auto inside = stable_complements(w, h, split.u(), std::nullopt);
    for (const auto* fam : {&containing, &inside}) {
      if (fam->empty()) continue;
      const Subspace c = fam->at(Vector(fam->dimension()));
      if (!split.in_family(c) || !h.stabilizes(c) || !are_complements(w, c))
        throw InternalInconsistency("GL(U) complement failed verification");
      res.kind = CandidateResult::Kind::witness;
      res.pair = checked_pair(Flag(n, {w}), Flag(n, {c}));
      break;
    }
    if (res.kind != CandidateResult::Kind::witness) {
      res.kind = CandidateResult::Kind::refuted;
      Refutation r;
      r.flag = Flag(n, {w});
      r.linear.push_back(linear_proof("containing Utilde", containing));
      r.linear.push_back(linear_proof("inside U", inside));
      res.refutation = std::move(r);
    }
    results[idx] = std::move(res);
  });
  return assemble(candidates, std::move(results), pool.closed());
}

TriVerdict relcr_classical(const GroupH& h, const BilinForm& b, const SubspacePool& pool, std::size_t elim_dim_cap) {
  const std::size_t n = h.ambient_dim();
  if (b.ambient_dim() != n) throw std::invalid_argument("relcr_classical: dimension mismatch");
  std::vector<Matrix> gens = h.generators();
  for (auto& g : form_adjoints(h.generators(), b)) gens.push_back(std::move(g));

  std::vector<Subspace> candidates;
  for (const auto& m : pool.members()) {
    const auto& s = m.space;
    if (s.is_zero() || s.is_whole()) continue;
    if (is_totally_isotropic(s, b) && h.stabilizes(s) && h.stabilizes(perp(s, b))) candidates.push_back(s);
  }
  std::vector<CandidateResult> results(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t idx) {
    const Subspace& u = candidates[idx];
    const Flag flag = isotropic_flag(u, b);
    if (!is_classical_flag(flag, b)) throw InternalInconsistency("isotropic flag does not have the classical shape");
    CandidateResult res;
    const auto fam = stable_complements(perp(u, b), gens);
    if (fam.empty()) {
      res.kind = CandidateResult::Kind::refuted;
      Refutation r;
      r.flag = flag;
      r.linear.push_back(linear_proof("complement of U^perp stable under H and adjoints", fam));
      res.refutation = std::move(r);
      results[idx] = std::move(res);
      return;
    }
    const auto w = fam.symbolic_vectors();
    std::vector<Poly> eqs;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i; j < w.size(); ++j) {
        if (i == j && b.kind() == FormKind::symplectic) continue;
        Poly e(fam.dimension());
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) {
            if (b.gram()(r, c) != 0) e = e + (w[i][r] * w[j][c]).scaled(b.gram()(r, c));
          }
        eqs.push_back(std::move(e));
      }
    }
    const auto search = search_family(fam.dimension(), eqs, elim_dim_cap);
    if (search.status == FamilySearch::Status::found) {
      const Subspace wsp = fam.at(search.parameters);
      if (!is_totally_isotropic(wsp, b) || !h.stabilizes(wsp) || !h.stabilizes(perp(wsp, b)) ||
          !are_complements(wsp, perp(u, b)) || !are_complements(u, perp(wsp, b)))
        throw InternalInconsistency("isotropic complement failed verification");
      res.kind = CandidateResult::Kind::witness;
      res.pair = checked_pair(flag, isotropic_flag(wsp, b));
    } else if (search.status == FamilySearch::Status::empty) {
      res.kind = CandidateResult::Kind::refuted;
      Refutation r;
      r.flag = flag;
      PolynomialEmptiness pe{fam.affine(), eqs, search.outcome, discriminant_confirms_empty(eqs)};
      r.polynomial = std::move(pe);
      res.refutation = std::move(r);
    } else {
      res.kind = CandidateResult::Kind::unknown;
      res.reason = "isotropic complement of " + std::to_string(u.dim()) + "-dimensional candidate undecided: " +
                   search.reason;
      res.family = fam.affine();
    }
    results[idx] = std::move(res);
  });
  return assemble(candidates, std::move(results), pool.closed());
}

}  // namespace relcr
