#include "relcr/torus.hpp"

#include "relcr/fourier_motzkin.hpp"
#include "relcr/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace relcr {

namespace {

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("weight does not fit in 64 bits");
  return z.get_si();
}

Vector to_vector(const Weights& w) {
  Vector v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) v[i] = Rational(static_cast<long>(w[i]));
  return v;
}

// Clears denominators and divides by the content.
Weights primitive_integer(const Vector& v) {
  Integer lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> ints(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].get_num() * (lcm / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  Weights out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_int64(g == 0 ? ints[i] : Integer(ints[i] / g));
  return out;
}

}  // namespace

TorusK::TorusK(std::size_t ambient_dim, std::vector<Weights> lattice_basis)
    : ambient_dim_(ambient_dim), basis_(std::move(lattice_basis)) {
  std::vector<Vector> rows;
  for (const auto& r : basis_) {
    if (r.size() != ambient_dim_) throw std::invalid_argument("lattice basis row has wrong length");
    rows.push_back(to_vector(r));
  }
  if (!rows.empty() && relcr::rank(Matrix::from_rows(rows)) != rows.size()) {
    throw std::invalid_argument("lattice basis rows are linearly dependent");
  }
}

Weights TorusK::character(std::size_t coord) const {
  Weights c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = basis_[i].at(coord);
  return c;
}

Weights TorusK::cocharacter_weights(const Weights& coefficients) const {
  if (coefficients.size() != basis_.size()) throw std::invalid_argument("cocharacter coefficient count != torus rank");
  Weights w(ambient_dim_);
  for (std::size_t j = 0; j < ambient_dim_; ++j) {
    Integer acc = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) acc += Integer(static_cast<long>(coefficients[i])) * static_cast<long>(basis_[i][j]);
    w[j] = to_int64(acc);
  }
  return w;
}

WeightClasses weight_classes(const TorusK& k) {
  WeightClasses wc;
  wc.class_of.assign(k.ambient_dim(), 0);
  std::map<Weights, std::size_t> index;
  for (std::size_t j = 0; j < k.ambient_dim(); ++j) {
    const Weights ch = k.character(j);
    auto [it, inserted] = index.emplace(ch, wc.classes.size());
    if (inserted) wc.classes.emplace_back();
    wc.classes[it->second].push_back(j);
    wc.class_of[j] = it->second;
  }
  return wc;
}

Flag flag_from_weights(const Weights& w) {
  const std::size_t n = w.size();
  std::vector<std::int64_t> values(w.begin(), w.end());
  std::sort(values.begin(), values.end(), std::greater<>());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Subspace> chain;
  for (std::size_t t = 0; t + 1 < values.size(); ++t) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] >= values[t]) idx.push_back(i);
    }
    chain.push_back(Subspace::coordinate(n, idx));
  }
  return Flag(n, std::move(chain));
}

bool operator<(const FlagType& a, const FlagType& b) {
  if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size();
  return a.blocks < b.blocks;
}

namespace {

// Feasibility of: equal weights within each block, strictly decreasing
// across blocks, and the last block strictly above every class in `rest`.
// Unknowns are the coefficients c in Q^r of the cocharacter.
std::optional<CocharacterWitness> prefix_feasible(const std::vector<std::vector<std::size_t>>& blocks,
                                                  const std::vector<std::size_t>& rest,
                                                  const std::vector<Vector>& class_chars, std::size_t r) {
  // Equalities: (b_i - b_first) . c = 0 within each block.
  Matrix eq(0, r);
  for (const auto& blk : blocks) {
    for (std::size_t t = 1; t < blk.size(); ++t) eq.append_row(subtract(class_chars[blk[t]], class_chars[blk[0]]));
  }
  Matrix null_basis = eq.rows() == 0 ? Matrix::identity(r) : kernel(eq);
  const std::size_t p = null_basis.rows();

  std::vector<Vector> diffs;
  for (std::size_t j = 0; j + 1 < blocks.size(); ++j) {
    diffs.push_back(subtract(class_chars[blocks[j][0]], class_chars[blocks[j + 1][0]]));
  }
  if (!blocks.empty()) {
    for (auto c : rest) diffs.push_back(subtract(class_chars[blocks.back()[0]], class_chars[c]));
  }

  std::vector<LinearInequality> system;
  for (const auto& d : diffs) {
    LinearInequality ineq;
    ineq.coeffs.resize(p);
    for (std::size_t k = 0; k < p; ++k) ineq.coeffs[k] = dot(d, null_basis.row(k));
    ineq.constant = 0;
    ineq.strict = true;
    system.push_back(std::move(ineq));
  }
  const auto y = fm_feasible_point(system, p);
  if (!y) return std::nullopt;
  Vector c(r);
  for (std::size_t k = 0; k < p; ++k) {
    if ((*y)[k] == 0) continue;
    for (std::size_t i = 0; i < r; ++i) c[i] += (*y)[k] * null_basis(k, i);
  }
  return CocharacterWitness{primitive_integer(c)};
}

std::vector<Vector> class_characters(const TorusK& k, const WeightClasses& wc) {
  std::vector<Vector> chars;
  for (const auto& cls : wc.classes) chars.push_back(to_vector(k.character(cls.front())));
  return chars;
}

void validate_partition(const FlagType& ft, std::size_t nclasses) {
  std::vector<int> seen(nclasses, 0);
  if (ft.blocks.empty()) throw MalformedPartition("flag type has no blocks");
  for (const auto& blk : ft.blocks) {
    if (blk.empty()) throw MalformedPartition("flag type has an empty block");
    for (auto c : blk) {
      if (c >= nclasses) throw MalformedPartition("flag type references an unknown weight class");
      if (seen[c]++) throw MalformedPartition("weight class appears in two blocks");
    }
  }
  for (auto s : seen) {
    if (!s) throw MalformedPartition("flag type does not cover every weight class");
  }
}

// Depth-first over ordered partitions; prunes on prefix infeasibility.
void extend_types(std::vector<std::vector<std::size_t>>& prefix, const std::vector<std::size_t>& remaining,
                  const std::vector<Vector>& chars, std::size_t r, std::vector<TypedFlag>& out) {
  const std::size_t m = remaining.size();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> block;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < m; ++i) ((mask >> i) & 1u ? block : rest).push_back(remaining[i]);
    prefix.push_back(block);
    if (auto wit = prefix_feasible(prefix, rest, chars, r)) {
      if (rest.empty()) {
        out.push_back(TypedFlag{FlagType{prefix}, *wit});
      } else {
        extend_types(prefix, rest, chars, r, out);
      }
    }
    prefix.pop_back();
  }
}

}  // namespace

std::optional<CocharacterWitness> feasible(const FlagType& ft, const TorusK& k) {
  const auto wc = weight_classes(k);
  validate_partition(ft, wc.count());
  return prefix_feasible(ft.blocks, {}, class_characters(k, wc), k.rank());
}

Flag flag_of_type(const FlagType& ft, const WeightClasses& classes, std::size_t ambient_dim) {
  std::vector<Subspace> chain;
  std::vector<std::size_t> idx;
  for (std::size_t b = 0; b + 1 < ft.blocks.size(); ++b) {
    for (auto c : ft.blocks[b]) idx.insert(idx.end(), classes.classes.at(c).begin(), classes.classes.at(c).end());
    chain.push_back(Subspace::coordinate(ambient_dim, idx));
  }
  return Flag(ambient_dim, std::move(chain));
}

GradedDecomposition decomposition_of_type(const FlagType& ft, const WeightClasses& classes, std::size_t ambient_dim) {
  std::vector<Subspace> pieces;
  for (const auto& blk : ft.blocks) {
    std::vector<std::size_t> idx;
    for (auto c : blk) idx.insert(idx.end(), classes.classes.at(c).begin(), classes.classes.at(c).end());
    pieces.push_back(Subspace::coordinate(ambient_dim, idx));
  }
  return GradedDecomposition(ambient_dim, std::move(pieces));
}

FlagType opposite_type(const FlagType& ft) {
  FlagType out = ft;
  std::reverse(out.blocks.begin(), out.blocks.end());
  return out;
}

FlagType type_of_weights(const Weights& w, const WeightClasses& classes) {
  std::map<std::int64_t, std::vector<std::size_t>, std::greater<>> by_value;
  for (std::size_t c = 0; c < classes.count(); ++c) by_value[w.at(classes.classes[c].front())].push_back(c);
  FlagType ft;
  for (auto& [value, blk] : by_value) ft.blocks.push_back(std::move(blk));
  return ft;
}

std::vector<TypedFlag> enumerate_flag_types(const TorusK& k, std::size_t class_bound) {
  const auto wc = weight_classes(k);
  const std::size_t c = wc.count();
  if (c > class_bound) {
    throw ClassBoundExceeded("torus has " + std::to_string(c) + " weight classes; bound is " + std::to_string(class_bound));
  }
  const auto chars = class_characters(k, wc);
  std::vector<std::size_t> all_classes(c);
  std::iota(all_classes.begin(), all_classes.end(), 0);

  // One task per choice of the top block.
  const std::size_t tasks = (std::size_t{1} << c) - 1;
  std::vector<std::vector<TypedFlag>> partial(tasks);
  parallel_for(tasks, [&](std::size_t t) {
    const std::uint32_t mask = static_cast<std::uint32_t>(t + 1);
    std::vector<std::size_t> block, rest;
    for (std::size_t i = 0; i < c; ++i) ((mask >> i) & 1u ? block : rest).push_back(i);
    std::vector<std::vector<std::size_t>> prefix{block};
    if (auto wit = prefix_feasible(prefix, rest, chars, k.rank())) {
      if (rest.empty()) {
        partial[t].push_back(TypedFlag{FlagType{prefix}, *wit});
      } else {
        extend_types(prefix, rest, chars, k.rank(), partial[t]);
      }
    }
  });
  std::vector<TypedFlag> out;
  for (auto& p : partial) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end(), [](const TypedFlag& a, const TypedFlag& b) { return a.type < b.type; });
  return out;
}

namespace {

// Coarsening of ft keeping only the chain members at the given cut
// positions (cut j sits after block j).
FlagType coarsen(const FlagType& ft, const std::vector<std::size_t>& cuts) {
  FlagType out;
  std::vector<std::size_t> cur;
  std::size_t next_cut = 0;
  for (std::size_t b = 0; b < ft.blocks.size(); ++b) {
    cur.insert(cur.end(), ft.blocks[b].begin(), ft.blocks[b].end());
    if (next_cut < cuts.size() && cuts[next_cut] == b) {
      std::sort(cur.begin(), cur.end());
      out.blocks.push_back(cur);
      cur.clear();
      ++next_cut;
    }
  }
  std::sort(cur.begin(), cur.end());
  out.blocks.push_back(cur);
  return out;
}

std::vector<TypedFlag> select_minimal(const std::vector<TypedFlag>& all, const std::set<FlagType>& members) {
  std::vector<TypedFlag> out;
  for (const auto& tf : all) {
    if (tf.type.is_trivial()) continue;
    const std::size_t m = tf.type.blocks.size() - 1;
    bool minimal = true;
    for (std::uint32_t mask = 1; mask + 1 < (1u << m) && minimal; ++mask) {
      std::vector<std::size_t> cuts;
      for (std::size_t j = 0; j < m; ++j) {
        if ((mask >> j) & 1u) cuts.push_back(j);
      }
      if (members.count(coarsen(tf.type, cuts))) minimal = false;
    }
    if (minimal) out.push_back(tf);
  }
  return out;
}

}  // namespace

std::vector<TypedFlag> minimal_flags(const TorusK& k, std::size_t class_bound) {
  return TorusFlagCatalog(k, class_bound).minimal();
}

TorusFlagCatalog::TorusFlagCatalog(TorusK k, std::size_t class_bound)
    : torus_(std::move(k)), classes_(weight_classes(torus_)) {
  all_ = enumerate_flag_types(torus_, class_bound);
  for (const auto& tf : all_) members_.insert(tf.type);
  minimal_ = select_minimal(all_, members_);
}

const TypedFlag* TorusFlagCatalog::find(const FlagType& ft) const {
  for (const auto& tf : all_) {
    if (tf.type == ft) return &tf;
  }
  return nullptr;
}

std::vector<FlagType> minimal_cover_failures(const TorusFlagCatalog& catalog) {
  std::vector<Flag> minimal_flags_list;
  for (const auto& tf : catalog.minimal()) minimal_flags_list.push_back(catalog.flag(tf.type));
  std::vector<FlagType> failures;
  for (const auto& tf : catalog.all()) {
    if (tf.type.is_trivial()) continue;
    const Flag f = catalog.flag(tf.type);
    std::set<Subspace> covered;
    for (const auto& mf : minimal_flags_list) {
      if (flag_coarser_eq(mf, f)) covered.insert(mf.chain().begin(), mf.chain().end());
    }
    const std::set<Subspace> members(f.chain().begin(), f.chain().end());
    if (covered != members) failures.push_back(tf.type);
  }
  return failures;
}

bool have_common_borel(const std::vector<Weights>& ws) {
  if (ws.empty()) return true;
  const std::size_t n = ws.front().size();
  // Edge a -> b when some w puts a strictly above b; need acyclicity.
  std::vector<std::vector<bool>> above(n, std::vector<bool>(n, false));
  for (const auto& w : ws) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (w[a] > w[b]) above[a][b] = true;
  }
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (above[a][b]) ++indeg[b];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::size_t done = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++done;
    for (std::size_t b = 0; b < n; ++b) {
      if (above[v][b] && --indeg[b] == 0) ready.push_back(b);
    }
  }
  return done == n;
}

Refinement common_refinement(const std::vector<Weights>& ws, bool require_compatible) {
  if (ws.empty()) throw std::invalid_argument("common_refinement: empty family");
  const std::size_t n = ws.front().size();
  const std::size_t m = ws.size();
  std::int64_t max_abs = 0;
  for (const auto& w : ws) {
    if (w.size() != n) throw std::invalid_argument("common_refinement: weight vectors of different lengths");
    for (auto x : w) max_abs = std::max<std::int64_t>(max_abs, x < 0 ? -x : x);
  }
  if (require_compatible && !have_common_borel(ws)) {
    throw IncompatibleCocharacters("no total order of coordinates is compatible with every cocharacter");
  }
  const Integer base = 1 + 2 * Integer(static_cast<long>(m)) * static_cast<long>(max_abs);
  Refinement out;
  std::vector<Integer> mult(m);
  for (std::size_t i = 0; i < m; ++i) {
    Integer p = 1;
    for (std::size_t e = 0; e + 1 + i < m; ++e) p *= base;
    mult[i] = p;
    out.multipliers.push_back(to_int64(p));
  }
  out.combined.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    Integer acc = 0;
    for (std::size_t i = 0; i < m; ++i) acc += mult[i] * static_cast<long>(ws[i][j]);
    out.combined[j] = to_int64(acc);
  }

  // Join: coordinates ordered lexicographically by (w_1, ..., w_m), descending.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t j) {
    Weights k(m);
    for (std::size_t i = 0; i < m; ++i) k[i] = ws[i][j];
    return k;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const bool lex_gt = key(a) > key(b);
      const bool lex_eq = key(a) == key(b);
      if ((out.combined[a] > out.combined[b]) != lex_gt || (out.combined[a] == out.combined[b]) != lex_eq) {
        throw InternalInconsistency("common_refinement: combined cocharacter does not induce the join");
      }
    }
  }
  if (require_compatible) {
    std::set<Subspace> members;
    for (const auto& w : ws) {
      const Flag f = flag_from_weights(w);
      members.insert(f.chain().begin(), f.chain().end());
    }
    const Flag combined = flag_from_weights(out.combined);
    const std::set<Subspace> got(combined.chain().begin(), combined.chain().end());
    if (got != members) throw InternalInconsistency("common_refinement: combined flag is not the union of the input flags");
  }
  return out;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::definition: return "definition";
    case Method::minimal: return "minimal";
    case Method::levi: return "levi";
    case Method::all_opposites: return "all_opposites";
  }
  return "unknown";
}

namespace {

std::vector<const TypedFlag*> stable_types(const GroupH& h, const TorusFlagCatalog& catalog, bool nontrivial_only) {
  std::vector<const TypedFlag*> out;
  for (const auto& tf : catalog.all()) {
    if (nontrivial_only && tf.type.is_trivial()) continue;
    if (is_stable(catalog.flag(tf.type), h)) out.push_back(&tf);
  }
  return out;
}

void require_matching(const GroupH& h, const TorusFlagCatalog& catalog) {
  if (h.ambient_dim() != catalog.torus().ambient_dim()) throw std::invalid_argument("H and K act on spaces of different dimension");
}

}  // namespace

TorusVerdict relcr_torus_definition(const GroupH& h, const TorusFlagCatalog& catalog) {
  require_matching(h, catalog);
  TorusVerdict v;
  v.method = Method::definition;
  for (const auto& tf : catalog.all()) {
    if (tf.type.is_trivial()) continue;
    if (!is_stable(catalog.flag(tf.type), h)) continue;
    const auto pieces = catalog.pieces(tf.type);
    for (std::size_t i = 0; i < pieces.pieces().size(); ++i) {
      if (!h.stabilizes(pieces.pieces()[i])) {
        v.relcr = false;
        v.witness = tf;
        v.violated_condition = "H stabilizes the flag but not graded piece " + std::to_string(i + 1);
        return v;
      }
    }
  }
  return v;
}

TorusVerdict relcr_torus_minimal(const GroupH& h, const TorusFlagCatalog& catalog) {
  require_matching(h, catalog);
  TorusVerdict v;
  v.method = Method::minimal;
  for (const auto& tf : catalog.minimal()) {
    if (!is_stable(catalog.flag(tf.type), h)) continue;
    const FlagType opp = opposite_type(tf.type);
    if (!catalog.contains(opp)) throw InternalInconsistency("opposite of a feasible type is not feasible");
    if (!is_stable(catalog.flag(opp), h)) {
      v.relcr = false;
      v.witness = tf;
      v.violated_condition = "H stabilizes a minimal flag but not its opposite";
      return v;
    }
  }
  return v;
}

TorusVerdict relcr_torus_levi(const GroupH& h, const TorusFlagCatalog& catalog) {
  require_matching(h, catalog);
  TorusVerdict v;
  v.method = Method::levi;
  const auto stable = stable_types(h, catalog, true);
  for (const auto& candidate : catalog.all()) {
    if (!stabilizes_decomposition(catalog.pieces(candidate.type), h)) continue;
    bool irreducible = true;
    for (const TypedFlag* mu : stable) {
      std::vector<std::size_t> block_of(catalog.classes().count());
      for (std::size_t b = 0; b < mu->type.blocks.size(); ++b)
        for (auto c : mu->type.blocks[b]) block_of[c] = b;
      for (const auto& blk : candidate.type.blocks) {
        for (auto c : blk) {
          if (block_of[c] != block_of[blk.front()]) irreducible = false;
        }
      }
      if (!irreducible) break;
    }
    if (irreducible) {
      v.witness = candidate;
      return v;
    }
  }
  v.relcr = false;
  v.violated_condition = "no Levi of a feasible type contains H with H relatively irreducible in it";
  return v;
}

TorusVerdict relcr_torus_all_opposites(const GroupH& h, const TorusFlagCatalog& catalog) {
  require_matching(h, catalog);
  TorusVerdict v;
  v.method = Method::all_opposites;
  const auto stable = stable_types(h, catalog, true);
  for (const TypedFlag* tf : stable) {
    const Flag f = catalog.flag(tf->type);
    bool found = false;
    for (const TypedFlag* other : stable) {
      if (other->type.blocks.size() != tf->type.blocks.size()) continue;
      if (verify_opposite(f, catalog.flag(other->type))) {
        found = true;
        break;
      }
    }
    if (!found) {
      v.relcr = false;
      v.witness = *tf;
      v.violated_condition = "H-stable flag in F_K without an H-stable opposite in F_K";
      return v;
    }
  }
  return v;
}

TorusVerdict relcr_torus_definition(const GroupH& h, const TorusK& k) {
  return relcr_torus_definition(h, TorusFlagCatalog(k));
}
TorusVerdict relcr_torus_minimal(const GroupH& h, const TorusK& k) {
  return relcr_torus_minimal(h, TorusFlagCatalog(k));
}
TorusVerdict relcr_torus_levi(const GroupH& h, const TorusK& k) { return relcr_torus_levi(h, TorusFlagCatalog(k)); }

CrosscheckReport relcr_torus_crosscheck(const GroupH& h, const TorusFlagCatalog& catalog) {
  CrosscheckReport r;
  r.definition = relcr_torus_definition(h, catalog);
  r.minimal = relcr_torus_minimal(h, catalog);
  r.levi = relcr_torus_levi(h, catalog);
  if (r.definition.relcr != r.minimal.relcr || r.definition.relcr != r.levi.relcr) {
    throw InternalInconsistency("torus checkers disagree: definition=" + std::to_string(r.definition.relcr) +
                                " minimal=" + std::to_string(r.minimal.relcr) + " levi=" + std::to_string(r.levi.relcr));
  }
  r.relcr = r.definition.relcr;
  return r;
}

CrosscheckReport relcr_torus_crosscheck(const GroupH& h, const TorusK& k) {
  return relcr_torus_crosscheck(h, TorusFlagCatalog(k));
}

TorusFactor project_torus(const TorusK& k, const std::vector<std::size_t>& block) {
  std::vector<Vector> rows;
  for (const auto& r : k.lattice_basis()) {
    Vector v(k.ambient_dim());
    for (auto j : block) v.at(j) = Rational(static_cast<long>(r.at(j)));
    rows.push_back(v);
  }
  // Keep an independent subset of the projected rows.
  std::vector<Weights> kept;
  Matrix acc(0, k.ambient_dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Matrix trial = acc;
    trial.append_row(rows[i]);
    if (relcr::rank(trial) == trial.rows()) {
      acc = trial;
      Weights w(k.ambient_dim(), 0);
      for (auto j : block) w[j] = k.lattice_basis()[i][j];
      kept.push_back(w);
    }
  }
  return TorusFactor{TorusK(k.ambient_dim(), kept), block};
}

namespace {

Subspace rational_rowspace(const TorusK& k) {
  std::vector<Vector> rows;
  for (const auto& r : k.lattice_basis()) rows.push_back(to_vector(r));
  return Subspace::span(k.ambient_dim(), rows);
}

}  // namespace

ProductReport relcr_torus_product(const GroupH& h, const std::vector<TorusFactor>& factors,
                                  const std::optional<TorusK>& combined) {
  if (factors.empty()) throw std::invalid_argument("relcr_torus_product: no factors");
  const std::size_t n = h.ambient_dim();
  std::vector<int> owner(n, -1);
  std::vector<Weights> stacked;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto& fac = factors[f];
    if (fac.torus.ambient_dim() != n) throw std::invalid_argument("factor torus has wrong ambient dimension");
    for (auto j : fac.block) {
      if (j >= n || owner[j] != -1) throw std::invalid_argument("factor blocks must be disjoint coordinate sets");
      owner[j] = static_cast<int>(f);
    }
    for (const auto& row : fac.torus.lattice_basis()) {
      for (std::size_t j = 0; j < n; ++j) {
        if (row[j] != 0 && std::find(fac.block.begin(), fac.block.end(), j) == fac.block.end()) {
          throw std::invalid_argument("factor torus acts outside its block");
        }
      }
      stacked.push_back(row);
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) throw std::invalid_argument("factor blocks must cover every coordinate");

  const TorusK product(n, stacked);
  const TorusK k = combined.value_or(product);

  ProductReport report;
  report.k_is_product = rational_rowspace(k) == rational_rowspace(product);
  report.h_preserves_blocks = true;
  for (const auto& fac : factors) {
    if (!h.stabilizes(Subspace::coordinate(n, fac.block))) report.h_preserves_blocks = false;
  }
  report.combined = relcr_torus_crosscheck(h, k);
  bool all_factors = true;
  for (const auto& fac : factors) {
    report.factors.push_back(relcr_torus_crosscheck(h, fac.torus));
    all_factors = all_factors && report.factors.back().relcr;
  }
  report.equivalence_asserted = report.h_preserves_blocks && report.k_is_product;
  if (report.equivalence_asserted && report.combined.relcr != all_factors) {
    throw InternalInconsistency("product criterion violated: K verdict differs from the conjunction of factor verdicts");
  }
  return report;
}

}  // namespace relcr
