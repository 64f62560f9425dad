#include "relcr/g2.hpp"

#include "relcr/parallel.hpp"

#include <stdexcept>

namespace relcr {

namespace {

constexpr std::size_t kDim = 7;

// Zorn vector-matrix element (a, v, w, b).
struct Zorn {
  Rational a;
  std::array<Rational, 3> v;
  std::array<Rational, 3> w;
  Rational b;
};

std::array<Rational, 3> cross(const std::array<Rational, 3>& x, const std::array<Rational, 3>& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

Rational dot3(const std::array<Rational, 3>& x, const std::array<Rational, 3>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

Zorn multiply(const Zorn& x, const Zorn& y) {
  Zorn z;
  z.a = x.a * y.a + dot3(x.v, y.w);
  z.b = x.b * y.b + dot3(x.w, y.v);
  const auto ww = cross(x.w, y.w);
  const auto vv = cross(x.v, y.v);
  for (int i = 0; i < 3; ++i) {
    z.v[i] = x.a * y.v[i] + y.b * x.v[i] + ww[i];
    z.w[i] = y.a * x.w[i] + x.b * y.w[i] - vv[i];
  }
  return z;
}

Rational norm(const Zorn& x) { return x.a * x.b - dot3(x.v, x.w); }

Zorn plus(const Zorn& x, const Zorn& y) {
  Zorn z;
  z.a = x.a + y.a;
  z.b = x.b + y.b;
  for (int i = 0; i < 3; ++i) {
    z.v[i] = x.v[i] + y.v[i];
    z.w[i] = x.w[i] + y.w[i];
  }
  return z;
}

Rational polar(const Zorn& x, const Zorn& y) { return norm(plus(x, y)) - norm(x) - norm(y); }

// e1 = v1, e2 = w2, e3 = w3, e4 = (1, 0, 0, -1), e5 = v3, e6 = v2, e7 = w1.
Zorn basis_element(std::size_t i) {
  Zorn z;
  switch (i) {
    case 0: z.v[0] = 1; break;
    case 1: z.w[1] = 1; break;
    case 2: z.w[2] = 1; break;
    case 3: z.a = 1; z.b = -1; break;
    case 4: z.v[2] = 1; break;
    case 5: z.v[1] = 1; break;
    case 6: z.w[0] = 1; break;
    default: throw std::out_of_range("G2 basis index");
  }
  return z;
}

Zorn zorn_from_coords(const std::array<long, 8>& c) {
  Zorn z;
  z.a = c[0];
  z.v = {Rational(c[1]), Rational(c[2]), Rational(c[3])};
  z.w = {Rational(c[4]), Rational(c[5]), Rational(c[6])};
  z.b = c[7];
  return z;
}

const std::vector<Weights>& g2_lattice() {
  static const std::vector<Weights> lattice{{1, 0, 1, 0, -1, 0, -1}, {0, 1, -1, 0, 1, -1, 0}};
  return lattice;
}

Vector basis_vector(std::size_t i) { return unit_vector(kDim, i); }

}  // namespace

Rational G2Data::trilinear_eval(const Vector& x, const Vector& y, const Vector& z) const {
  Rational acc = 0;
  for (std::size_t i = 0; i < kDim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < kDim; ++j) {
      if (y[j] == 0) continue;
      for (std::size_t k = 0; k < kDim; ++k) {
        if (z[k] == 0) continue;
        const Rational& c = f(i, j, k);
        if (c != 0) acc += c * x[i] * y[j] * z[k];
      }
    }
  }
  return acc;
}

std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>> G2Data::sparse_triples() const {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>> out;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = i + 1; j < kDim; ++j)
      for (std::size_t k = j + 1; k < kDim; ++k) {
        if (f(i, j, k) != 0) out.emplace_back(i, j, k, f(i, j, k));
      }
  return out;
}

G2Data build_g2_data() {
  // Deterministic sanity check of N(xy) = N(x) N(y) on a spread of elements.
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<long>(state % 7) - 3;
  };
  for (int trial = 0; trial < 64; ++trial) {
    std::array<long, 8> cx{}, cy{};
    for (auto& c : cx) c = next();
    for (auto& c : cy) c = next();
    const Zorn x = zorn_from_coords(cx);
    const Zorn y = zorn_from_coords(cy);
    if (norm(multiply(x, y)) != norm(x) * norm(y))
      throw InternalInconsistency("split octonion norm is not multiplicative");
  }

  std::vector<Zorn> e;
  for (std::size_t i = 0; i < kDim; ++i) e.push_back(basis_element(i));
  Matrix gram(kDim, kDim);
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) gram(i, j) = polar(e[i], e[j]);
  G2Data d{std::vector<Rational>(kDim * kDim * kDim), BilinForm(FormKind::orthogonal, gram),
           TorusK(kDim, g2_lattice())};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      const Zorn p = multiply(e[i], e[j]);
      for (std::size_t k = 0; k < kDim; ++k) d.trilinear[49 * i + 7 * j + k] = polar(p, e[k]);
    }
  if (!check_g2_invariants(d).ok()) throw InternalInconsistency("G2 model fails its invariants");
  return d;
}

G2Data g2_from_constants(const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>>& triples,
                         const Matrix& gram, const std::vector<Weights>& lattice) {
  G2Data d{std::vector<Rational>(kDim * kDim * kDim), BilinForm(FormKind::orthogonal, gram), TorusK(kDim, lattice)};
  for (const auto& [i, j, k, value] : triples) {
    if (i >= kDim || j >= kDim || k >= kDim) throw std::invalid_argument("G2 structure constant index out of range");
    const std::size_t idx[3] = {i, j, k};
    // Spread the value over all permutations with the sign of the permutation.
    const int perms[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}, {1, 0, 2, -1}, {0, 2, 1, -1}, {2, 1, 0, -1}};
    for (const auto& p : perms) {
      d.trilinear[49 * idx[p[0]] + 7 * idx[p[1]] + idx[p[2]]] = value * p[3];
    }
  }
  return d;
}

G2Invariants check_g2_invariants(const G2Data& d) {
  G2Invariants inv;
  inv.alternating = true;
  inv.trilinear_torus_invariant = true;
  const auto& lattice = d.torus.lattice_basis();
  auto weight = [&](std::size_t i) { return d.torus.character(i); };
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        const Rational& c = d.f(i, j, k);
        if (c != -d.f(j, i, k) || c != -d.f(i, k, j)) inv.alternating = false;
        if (c == 0) continue;
        for (std::size_t r = 0; r < lattice.size(); ++r) {
          if (weight(i)[r] + weight(j)[r] + weight(k)[r] != 0) inv.trilinear_torus_invariant = false;
        }
      }
  inv.bilinear_torus_invariant = true;
  const Matrix& g = d.bilinear.gram();
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      if (g(i, j) == 0) continue;
      for (std::size_t r = 0; r < lattice.size(); ++r) {
        if (weight(i)[r] + weight(j)[r] != 0) inv.bilinear_torus_invariant = false;
      }
    }
  inv.weights_match = d.torus.ambient_dim() == kDim && lattice == g2_lattice();
  return inv;
}

bool is_doubly_singular(const Subspace& u, const G2Data& d) {
  if (u.ambient_dim() != kDim) throw std::invalid_argument("is_doubly_singular: ambient dimension must be 7");
  if (u.dim() != 1 && u.dim() != 2) throw std::invalid_argument("is_doubly_singular: dimension must be 1 or 2");
  if (!is_totally_isotropic(u, d.bilinear)) return false;
  if (u.dim() == 1) return true;
  const Vector x = u.basis().row(0);
  const Vector y = u.basis().row(1);
  for (std::size_t k = 0; k < kDim; ++k) {
    if (d.trilinear_eval(x, y, basis_vector(k)) != 0) return false;
  }
  return true;
}

Subspace delta(const Subspace& u, const G2Data& d) {
  if (u.ambient_dim() != kDim || u.dim() != 1 || !is_doubly_singular(u, d))
    throw std::invalid_argument("delta: input must be a doubly singular line");
  const Vector x = u.basis().row(0);
  Matrix m(kDim, kDim);
  for (std::size_t j = 0; j < kDim; ++j)
    for (std::size_t k = 0; k < kDim; ++k) {
      Rational acc = 0;
      for (std::size_t i = 0; i < kDim; ++i) {
        if (x[i] != 0) acc += x[i] * d.f(i, j, k);
      }
      m(j, k) = acc;
    }
  const Subspace rad = Subspace::span(kDim, kernel(m));
  if (rad.dim() != 3 || !subspace_contains(rad, u)) throw InternalInconsistency("delta: radical is not 3-dimensional");
  return rad;
}

Flag g2_minimal_flag(const Subspace& u, const G2Data& d) {
  if (!is_doubly_singular(u, d)) throw std::invalid_argument("g2_minimal_flag: subspace is not doubly singular");
  if (u.dim() == 2) return Flag(kDim, {u, perp(u, d.bilinear)});
  const Subspace del = delta(u, d);
  return Flag(kDim, {u, del, perp(del, d.bilinear), perp(u, d.bilinear)});
}

bool is_g2_flag(const Flag& f, const G2Data& d) {
  if (f.ambient_dim() != kDim) return false;
  const auto& c = f.chain();
  const auto dims = f.dimensions();
  const auto& b = d.bilinear;
  auto ds = [&](const Subspace& s) { return is_doubly_singular(s, d); };
  if (dims == std::vector<std::size_t>{2, 5}) return ds(c[0]) && c[1] == perp(c[0], b);
  if (dims == std::vector<std::size_t>{1, 3, 4, 6}) return ds(c[0]) && c[1] == delta(c[0], d) && c[2] == perp(c[1], b) && c[3] == perp(c[0], b);
  if (dims == std::vector<std::size_t>{1, 2, 3, 4, 5, 6})
    return ds(c[0]) && ds(c[1]) && c[2] == delta(c[0], d) && c[3] == perp(c[2], b) && c[4] == perp(c[1], b) &&
           c[5] == perp(c[0], b);
  return false;
}

SubspacePool build_g2_pool(const GroupH& h, const G2Data& d, const std::vector<Vector>& seeds, std::size_t cap) {
  return build_pool(h, form_adjoints(h.generators(), d.bilinear), seeds, cap);
}

namespace {

Poly shifted(const Poly& p, std::size_t total, std::size_t offset) {
  Poly out(total);
  for (const auto& [e, c] : p.terms()) {
    Poly::Exponents e2(total, 0);
    for (std::size_t i = 0; i < e.size(); ++i) e2[offset + i] = e[i];
    out.add_term(e2, c);
  }
  return out;
}

std::vector<Poly> shifted(const std::vector<Poly>& v, std::size_t total, std::size_t offset) {
  std::vector<Poly> out;
  for (const auto& p : v) out.push_back(shifted(p, total, offset));
  return out;
}

Poly bilinear_poly(const std::vector<Poly>& x, const std::vector<Poly>& y, const Matrix& gram, std::size_t nvars) {
  Poly acc(nvars);
  for (std::size_t r = 0; r < kDim; ++r)
    for (std::size_t c = 0; c < kDim; ++c) {
      if (gram(r, c) != 0) acc = acc + (x[r] * y[c]).scaled(gram(r, c));
    }
  return acc;
}

// f(x, y, e_k) for symbolic x, y.
Poly trilinear_poly(const G2Data& d, const std::vector<Poly>& x, const std::vector<Poly>& y, std::size_t k,
                    std::size_t nvars) {
  Poly acc(nvars);
  for (std::size_t i = 0; i < kDim; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < kDim; ++j) {
      if (y[j].is_zero() || d.f(i, j, k) == 0) continue;
      acc = acc + (x[i] * y[j]).scaled(d.f(i, j, k));
    }
  }
  return acc;
}

AffineSolution direct_sum(const AffineSolution& a, const AffineSolution& b) {
  AffineSolution out;
  out.particular = a.particular;
  out.particular.insert(out.particular.end(), b.particular.begin(), b.particular.end());
  const std::size_t na = a.particular.size();
  const std::size_t nb = b.particular.size();
  out.homogeneous = Matrix(0, na + nb);
  for (const auto& r : a.homogeneous.row_list()) {
    Vector row(na + nb);
    std::copy(r.begin(), r.end(), row.begin());
    out.homogeneous.append_row(row);
  }
  for (const auto& r : b.homogeneous.row_list()) {
    Vector row(na + nb);
    std::copy(r.begin(), r.end(), row.begin() + na);
    out.homogeneous.append_row(row);
  }
  return out;
}

struct G2Candidate {
  enum class Kind { witness, refuted, unknown } kind = Kind::unknown;
  std::optional<OppositePair> pair;
  std::optional<Refutation> refutation;
  std::string reason;
  std::optional<AffineSolution> family;
};

LinearEmptiness linear_proof(const std::string& side, const ComplementFamily& fam) {
  return {side, fam.equations, fam.rhs, std::get<EmptySolution>(fam.solution).certificate};
}

OppositePair checked_pair(Flag f, Flag g) {
  if (!verify_opposite(f, g)) throw InternalInconsistency("G2 witness is not opposite to its flag");
  return {std::move(f), std::move(g)};
}

G2Candidate examine_plane(const GroupH& h, const G2Data& d, const std::vector<Matrix>& gens, const Subspace& u,
                          std::size_t cap) {
  G2Candidate res;
  const Flag flag = g2_minimal_flag(u, d);
  const auto& b = d.bilinear;
  const auto fam = stable_complements(perp(u, b), gens);
  if (fam.empty()) {
    res.kind = G2Candidate::Kind::refuted;
    res.refutation = Refutation{flag, {linear_proof("complement of U^perp stable under H and adjoints", fam)}, {}};
    return res;
  }
  const std::size_t p = fam.dimension();
  const auto w = fam.symbolic_vectors();
  std::vector<Poly> eqs{bilinear_poly(w[0], w[0], b.gram(), p), bilinear_poly(w[0], w[1], b.gram(), p),
                        bilinear_poly(w[1], w[1], b.gram(), p)};
  for (std::size_t k = 0; k < kDim; ++k) eqs.push_back(trilinear_poly(d, w[0], w[1], k, p));
  const auto search = search_family(p, eqs, cap);
  if (search.status == FamilySearch::Status::found) {
    const Subspace ws = fam.at(search.parameters);
    if (!is_doubly_singular(ws, d) || !h.stabilizes(ws) || !h.stabilizes(perp(ws, b)) ||
        !are_complements(u, perp(ws, b)) || !are_complements(ws, perp(u, b)))
      throw InternalInconsistency("G2 plane witness failed verification");
    res.kind = G2Candidate::Kind::witness;
    res.pair = checked_pair(flag, g2_minimal_flag(ws, d));
  } else if (search.status == FamilySearch::Status::empty) {
    res.kind = G2Candidate::Kind::refuted;
    res.refutation = Refutation{flag, {}, PolynomialEmptiness{fam.affine(), eqs, search.outcome, discriminant_confirms_empty(eqs)}};
  } else {
    res.reason = "doubly singular plane complement undecided: " + search.reason;
    res.family = fam.affine();
  }
  return res;
}

G2Candidate examine_line(const GroupH& h, const G2Data& d, const std::vector<Matrix>& gens, const Subspace& u,
                         std::size_t cap) {
  G2Candidate res;
  const Flag flag = g2_minimal_flag(u, d);
  const auto& b = d.bilinear;
  const Subspace del = delta(u, d);
  const auto wfam = stable_complements(perp(u, b), gens);
  const auto dfam = stable_complements(perp(del, b), gens);
  if (wfam.empty() || dfam.empty()) {
    Refutation r{flag, {}, {}};
    if (wfam.empty()) r.linear.push_back(linear_proof("complement of U^perp stable under H and adjoints", wfam));
    if (dfam.empty()) r.linear.push_back(linear_proof("complement of Delta(U)^perp stable under H and adjoints", dfam));
    res.kind = G2Candidate::Kind::refuted;
    res.refutation = std::move(r);
    return res;
  }
  const std::size_t pw = wfam.dimension();
  const std::size_t pd = dfam.dimension();
  const std::size_t p = pw + pd;
  const auto y = shifted(wfam.symbolic_vectors()[0], p, 0);
  std::vector<std::vector<Poly>> dv;
  for (const auto& v : dfam.symbolic_vectors()) dv.push_back(shifted(v, p, pw));
  std::vector<Poly> eqs{bilinear_poly(y, y, b.gram(), p)};
  for (const auto& di : dv)
    for (std::size_t k = 0; k < kDim; ++k) eqs.push_back(trilinear_poly(d, y, di, k, p));
  const auto family = direct_sum(wfam.affine(), dfam.affine());
  const auto search = search_family(p, eqs, cap);
  if (search.status == FamilySearch::Status::found) {
    const Vector tw(search.parameters.begin(), search.parameters.begin() + pw);
    const Vector td(search.parameters.begin() + pw, search.parameters.end());
    const Subspace ws = wfam.at(tw);
    const Subspace dw = dfam.at(td);
    if (!is_doubly_singular(ws, d) || delta(ws, d) != dw || !h.stabilizes(ws) || !h.stabilizes(dw) ||
        !h.stabilizes(perp(dw, b)) || !h.stabilizes(perp(ws, b)) || !are_complements(u, perp(ws, b)) ||
        !are_complements(ws, perp(u, b)) || !are_complements(del, perp(dw, b)) || !are_complements(dw, perp(del, b)))
      throw InternalInconsistency("G2 line witness failed verification");
    res.kind = G2Candidate::Kind::witness;
    res.pair = checked_pair(flag, g2_minimal_flag(ws, d));
  } else if (search.status == FamilySearch::Status::empty) {
    res.kind = G2Candidate::Kind::refuted;
    res.refutation = Refutation{flag, {}, PolynomialEmptiness{family, eqs, search.outcome, discriminant_confirms_empty(eqs)}};
  } else {
    res.reason = "doubly singular line complement undecided: " + search.reason;
    res.family = family;
  }
  return res;
}

}  // namespace

TriVerdict relcr_g2(const GroupH& h, const G2Data& d, const SubspacePool& pool, std::size_t elim_dim_cap) {
  if (h.ambient_dim() != kDim) throw std::invalid_argument("relcr_g2: H must act on Q^7");
  const auto& b = d.bilinear;
  std::vector<Matrix> gens = h.generators();
  for (auto& g : form_adjoints(h.generators(), b)) gens.push_back(std::move(g));

  std::vector<Subspace> candidates;
  for (const auto& m : pool.members()) {
    const auto& s = m.space;
    if (s.dim() != 1 && s.dim() != 2) continue;
    if (!is_doubly_singular(s, d) || !h.stabilizes(s) || !h.stabilizes(perp(s, b))) continue;
    if (s.dim() == 1) {
      const Subspace del = delta(s, d);
      if (!h.stabilizes(del) || !h.stabilizes(perp(del, b))) continue;
    }
    candidates.push_back(s);
  }
  std::vector<G2Candidate> results(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) {
    const auto& u = candidates[i];
    results[i] = u.dim() == 2 ? examine_plane(h, d, gens, u, elim_dim_cap) : examine_line(h, d, gens, u, elim_dim_cap);
  });

  TriVerdict v;
  v.pool_closed = pool.closed();
  v.candidates = candidates.size();
  for (auto& r : results) {
    if (r.kind == G2Candidate::Kind::refuted) {
      v.value = TriValue::not_relcr_witnessed;
      v.refutation = std::move(r.refutation);
      return v;
    }
  }
  for (auto& r : results) {
    if (r.kind == G2Candidate::Kind::unknown && v.value != TriValue::inconclusive) {
      v.value = TriValue::inconclusive;
      v.inconclusive_reason = r.reason;
      v.open_family = r.family;
    }
    if (r.kind == G2Candidate::Kind::witness) v.witnesses.push_back(*r.pair);
  }
  return v;
}

}  // namespace relcr
