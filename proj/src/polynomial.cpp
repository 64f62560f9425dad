#include "relcr/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace relcr {

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return UPoly(std::move(c));
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
  return UPoly(std::move(c));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return UPoly(std::move(c));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> c = coeffs_;
  const Rational lead = c.back();
  for (auto& x : c) x /= lead;
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> quot(a.degree() - b.degree() + 1);
  const auto& bc = b.coeffs();
  for (int d = a.degree(); d >= b.degree(); --d) {
    const Rational f = rem[d] / b.leading();
    if (f == 0) continue;
    quot[d - b.degree()] = f;
    for (int i = 0; i <= b.degree(); ++i) rem[d - b.degree() + i] -= f * bc[i];
  }
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

namespace {

// Positive divisors of |z|; complete=false if a cofactor could not be
// split by trial division and is not (probably) prime.
std::vector<Integer> divisors(Integer z, bool& complete) {
  z = abs(z);
  std::vector<std::pair<Integer, unsigned>> factors;
  for (Integer p = 2; p * p <= z && p <= 1000000; ++p) {
    unsigned e = 0;
    while (z % p == 0) {
      z /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  }
  if (z > 1) {
    if (z > Integer(1000000) * Integer(1000000) && mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) complete = false;
    factors.emplace_back(z, 1);
  }
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

RootSearch rational_roots(const UPoly& p) {
  RootSearch out;
  if (p.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
  // Integer coefficients.
  Integer lcm = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ic;
  for (const auto& c : p.coeffs()) ic.push_back(c.get_num() * (lcm / c.get_den()));
  std::size_t low = 0;
  while (ic[low] == 0) ++low;
  std::set<Rational> roots;
  if (low > 0) roots.insert(Rational(0));
  const Integer a0 = ic[low];
  const Integer an = ic.back();
  if (ic.size() - low > 1) {
    const auto ps = divisors(a0, out.complete);
    const auto qs = divisors(an, out.complete);
    for (const auto& num : ps) {
      for (const auto& den : qs) {
        for (int s : {1, -1}) {
          Rational cand(s * num, den);
          cand.canonicalize();
          if (p.eval(cand) == 0) roots.insert(cand);
        }
      }
    }
  }
  out.roots.assign(roots.begin(), roots.end());
  return out;
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  Poly p(nvars);
  Exponents e(nvars, 0);
  e.at(i) = 1;
  p.add_term(e, 1);
  return p;
}

bool Poly::is_constant() const {
  for (const auto& [e, c] : terms_) {
    for (auto x : e) {
      if (x) return false;
    }
  }
  return true;
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Poly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("Poly::add_term: exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out(nvars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  }
  return out;
}

Poly Poly::scaled(const Rational& s) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) out.add_term(e, c * s);
  return out;
}

Rational Poly::eval(const Vector& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("Poly::eval: wrong point dimension");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

Poly Poly::substitute(std::size_t var, const Rational& value) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (unsigned k = 0; k < e[var]; ++k) t *= value;
    Exponents e2 = e;
    e2[var] = 0;
    out.add_term(e2, t);
  }
  return out;
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  std::vector<Poly> out(degree_in(var) + 1, Poly(nvars_));
  for (const auto& [e, c] : terms_) {
    Exponents e2 = e;
    e2[var] = 0;
    out[e[var]].add_term(e2, c);
  }
  return out;
}

UPoly Poly::to_univariate(std::size_t var) const {
  std::vector<Rational> c(degree_in(var) + 1);
  for (const auto& [e, coef] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (i != var && e[i] != 0) throw std::invalid_argument("to_univariate: polynomial involves another variable");
    }
    c[e[var]] += coef;
  }
  return UPoly(std::move(c));
}

namespace {

Poly laplace_det(const std::vector<std::vector<Poly>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(nvars, 1);
  if (n == 1) return m[0][0];
  Poly acc(nvars);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    Poly term = m[0][col] * laplace_det(minor, nvars);
    acc = (col % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

Poly resultant(const Poly& p, const Poly& q, std::size_t var) {
  const auto a = p.coefficients_in(var);
  const auto b = q.coefficients_in(var);
  const std::size_t dp = a.size() - 1;
  const std::size_t dq = b.size() - 1;
  if (dp == 0 || dq == 0) throw std::invalid_argument("resultant: both polynomials must involve the variable");
  const std::size_t size = dp + dq;
  if (size > 8) throw std::invalid_argument("resultant: Sylvester matrix too large");
  const std::size_t nv = p.nvars();
  std::vector<std::vector<Poly>> syl(size, std::vector<Poly>(size, Poly(nv)));
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t i = 0; i <= dp; ++i) syl[r][r + i] = a[dp - i];
  for (std::size_t r = 0; r < dp; ++r)
    for (std::size_t i = 0; i <= dq; ++i) syl[dq + r][r + i] = b[dq - i];
  return laplace_det(syl, nv);
}

namespace {

using Status = SolveOutcome::Status;

// One variable (index var) left in every polynomial.
SolveOutcome solve_one(const std::vector<Poly>& system, std::size_t var, Vector point) {
  SolveOutcome out;
  UPoly g;
  bool any = false;
  for (const auto& p : system) {
    if (p.is_zero()) continue;
    const UPoly u = p.to_univariate(var);
    g = any ? gcd(g, u) : u.monic();
    any = true;
  }
  if (!any) {
    point[var] = 0;
    out.status = Status::found;
    out.point = point;
    return out;
  }
  out.eliminants.push_back(g);
  if (g.degree() == 0) {
    out.status = Status::empty;
    out.reason = "gcd of the equations is a nonzero constant";
    return out;
  }
  const auto roots = rational_roots(g);
  if (!roots.roots.empty()) {
    point[var] = roots.roots.front();
    out.status = Status::found;
    out.point = point;
    return out;
  }
  if (!roots.complete) {
    out.status = Status::unknown;
    out.reason = "could not factor a coefficient for the rational root test";
    return out;
  }
  out.status = Status::empty;
  out.reason = "gcd of the equations has no rational root";
  return out;
}

std::vector<Poly> substituted(const std::vector<Poly>& system, std::size_t var, const Rational& value) {
  std::vector<Poly> out;
  for (const auto& p : system) out.push_back(p.substitute(var, value));
  return out;
}

bool has_nonzero_constant(const std::vector<Poly>& system) {
  for (const auto& p : system) {
    if (!p.is_zero() && p.is_constant()) return true;
  }
  return false;
}

// Tries every candidate value for var, solving for the other variable.
// Returns found on the first success, empty if every candidate fails
// and the candidate list is exhaustive.
SolveOutcome try_values(const std::vector<Poly>& system, std::size_t var, std::size_t other,
                        const std::vector<Rational>& values, bool exhaustive) {
  SolveOutcome out;
  bool unknown = false;
  for (const auto& v : values) {
    auto reduced = substituted(system, var, v);
    if (has_nonzero_constant(reduced)) continue;
    Vector point(2);
    point[var] = v;
    auto sub = solve_one(reduced, other, point);
    if (sub.status == Status::found) return sub;
    if (sub.status == Status::unknown) unknown = true;
  }
  out.status = exhaustive && !unknown ? Status::empty : Status::unknown;
  return out;
}

SolveOutcome solve_two(const std::vector<Poly>& raw) {
  std::vector<Poly> system;
  for (const auto& p : raw) {
    if (!p.is_zero()) system.push_back(p);
  }
  SolveOutcome out;
  if (system.empty()) {
    out.status = Status::found;
    out.point = Vector(2);
    return out;
  }
  if (has_nonzero_constant(system)) {
    out.status = Status::empty;
    out.reason = "a nonzero constant equation";
    return out;
  }
  // An equation in a single variable pins that variable to finitely many values.
  for (std::size_t var = 0; var < 2; ++var) {
    const std::size_t other = 1 - var;
    for (const auto& p : system) {
      if (p.involves(var) && !p.involves(other)) {
        const UPoly u = p.to_univariate(var);
        const auto roots = rational_roots(u);
        auto res = try_values(system, var, other, roots.roots, roots.complete);
        res.eliminants.insert(res.eliminants.begin(), u);
        if (res.status == Status::empty) res.reason = "finitely many candidate values from a one-variable equation, none extends";
        if (res.status == Status::unknown && res.reason.empty()) res.reason = "incomplete rational root search";
        return res;
      }
    }
  }
  // Every equation involves both variables: eliminate variable 1.
  std::vector<UPoly> eliminants;
  for (std::size_t i = 0; i < system.size(); ++i) {
    for (std::size_t j = i + 1; j < system.size(); ++j) {
      const Poly r = resultant(system[i], system[j], 1);
      if (!r.is_zero()) eliminants.push_back(r.to_univariate(0));
    }
  }
  if (!eliminants.empty()) {
    UPoly g = eliminants.front();
    for (const auto& e : eliminants) g = gcd(g, e);
    SolveOutcome res;
    if (g.degree() == 0) {
      res.status = Status::empty;
      res.reason = "resultants have no common root";
    } else {
      const auto roots = rational_roots(g);
      res = try_values(system, 0, 1, roots.roots, roots.complete);
      if (res.status == Status::empty) res.reason = "no rational root of the resultant extends to a solution";
      if (res.status == Status::unknown && res.reason.empty()) res.reason = "incomplete rational root search";
    }
    res.eliminants = eliminants;
    return res;
  }
  // The equations share a curve of solutions; look for a rational point
  // of small height.
  std::vector<Rational> samples;
  for (int num = -6; num <= 6; ++num)
    for (int den = 1; den <= 4; ++den) samples.emplace_back(num, den);
  for (auto& s : samples) s.canonicalize();
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  auto res = try_values(system, 0, 1, samples, false);
  if (res.status != Status::found) {
    res.status = Status::unknown;
    res.reason = "solution set is a curve without a rational point of small height";
  }
  return res;
}

}  // namespace

SolveOutcome rational_solutions(const std::vector<Poly>& system, std::size_t nvars) {
  for (const auto& p : system) {
    if (p.nvars() != nvars) throw std::invalid_argument("rational_solutions: variable count mismatch");
  }
  if (nvars == 0) {
    SolveOutcome out;
    out.status = has_nonzero_constant(system) ? Status::empty : Status::found;
    if (out.status == Status::empty) out.reason = "a nonzero constant equation";
    return out;
  }
  if (nvars == 1) return solve_one(system, 0, Vector(1));
  if (nvars == 2) return solve_two(system);
  throw std::invalid_argument("rational_solutions supports at most two variables");
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<bool> discriminant_confirms_empty(const std::vector<Poly>& system) {
  if (system.empty()) return false;
  const std::size_t nvars = system.front().nvars();
  if (nvars > 1) return std::nullopt;
  for (const auto& p : system) {
    if (p.total_degree() > 2 || p.nvars() != nvars) return std::nullopt;
  }
  if (nvars == 0) {
    for (const auto& p : system) {
      if (!p.is_zero()) return true;
    }
    return false;
  }
  // Candidate roots from the first equation that pins the variable.
  std::optional<std::vector<Rational>> candidates;
  for (const auto& p : system) {
    if (p.is_zero()) continue;
    const auto c = p.to_univariate(0).coeffs();
    std::vector<Rational> roots;
    if (c.size() == 1) return true;  // nonzero constant
    if (c.size() == 2) {
      roots.push_back(-c[0] / c[1]);
    } else {
      const Rational disc = c[1] * c[1] - 4 * c[2] * c[0];
      if (disc < 0) return true;
      const auto s = rational_sqrt(disc);
      if (!s) return true;
      roots.push_back((-c[1] + *s) / (2 * c[2]));
      roots.push_back((-c[1] - *s) / (2 * c[2]));
    }
    candidates = roots;
    break;
  }
  if (!candidates) return false;  // every equation is 0 = 0
  for (const auto& r : *candidates) {
    bool all = true;
    for (const auto& p : system) {
      if (p.eval(Vector{r}) != 0) {
        all = false;
        break;
      }
    }
    if (all) return false;
  }
  return true;
}

Poly compose(const Poly& p, std::size_t var, const Poly& value) {
  Poly out(p.nvars());
  std::vector<Poly> powers{Poly::constant(p.nvars(), 1)};
  for (const auto& [e, c] : p.terms()) {
    while (powers.size() <= e[var]) powers.push_back(powers.back() * value);
    Poly rest(p.nvars());
    auto e2 = e;
    e2[var] = 0;
    rest.add_term(e2, c);
    out = out + rest * powers[e[var]];
  }
  return out;
}

namespace {

// c when p = c * x_var + (terms without x_var) with c constant.
std::optional<Rational> linear_coefficient(const Poly& p, std::size_t var) {
  if (p.degree_in(var) != 1) return std::nullopt;
  std::optional<Rational> c;
  for (const auto& [e, coeff] : p.terms()) {
    if (e[var] == 0) continue;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != var && e[i] != 0) return std::nullopt;
    }
    c = coeff;
  }
  return c;
}

std::set<std::size_t> involved_vars(const std::vector<Poly>& system) {
  std::set<std::size_t> vars;
  for (const auto& p : system)
    for (const auto& [e, c] : p.terms())
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) vars.insert(i);
  return vars;
}

}  // namespace

std::optional<bool> eliminate_then_discriminant(std::vector<Poly> system) {
  for (;;) {
    const auto vars = involved_vars(system);
    if (vars.size() <= 1) break;
    bool progressed = false;
    for (std::size_t k = 0; k < system.size() && !progressed; ++k) {
      for (auto v : vars) {
        const auto c = linear_coefficient(system[k], v);
        if (!c) continue;
        Poly value = system[k] - Poly::variable(system[k].nvars(), v).scaled(*c);
        value = value.scaled(-1 / *c);
        std::vector<Poly> next;
        for (std::size_t j = 0; j < system.size(); ++j) {
          if (j != k) next.push_back(compose(system[j], v, value));
        }
        system = std::move(next);
        progressed = true;
        break;
      }
    }
    if (!progressed) return std::nullopt;
  }
  const auto vars = involved_vars(system);
  std::vector<Poly> renamed;
  const std::size_t n = vars.size();
  for (const auto& p : system) {
    Poly q(n);
    for (const auto& [e, c] : p.terms()) {
      Poly::Exponents e2;
      if (n == 1) e2.push_back(e[*vars.begin()]);
      q.add_term(e2, c);
    }
    renamed.push_back(q);
  }
  if (renamed.empty()) return false;
  return discriminant_confirms_empty(renamed);
}

}  // namespace relcr
