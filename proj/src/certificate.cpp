#include "relcr/certificate.hpp"

#include <algorithm>
#include <stdexcept>

namespace relcr {

std::string k_kind_name(KKind k) {
  switch (k) {
    case KKind::torus: return "torus";
    case KKind::glu: return "glu";
    case KKind::classical: return "classical";
    case KKind::g2: return "g2";
  }
  return "unknown";
}

std::size_t KSpec::ambient_dim() const {
  switch (kind) {
    case KKind::torus: return torus->ambient_dim();
    case KKind::glu: return glu->ambient_dim();
    case KKind::classical: return form->ambient_dim();
    case KKind::g2: return 7;
  }
  return 0;
}

namespace {

bool in_torus_family(const Flag& f, const TorusFlagCatalog& catalog) {
  for (const auto& t : catalog.all()) {
    if (catalog.flag(t.type) == f) return true;
  }
  return false;
}

}  // namespace

bool in_flag_family(const Flag& f, const KSpec& k) {
  if (f.ambient_dim() != k.ambient_dim()) return false;
  switch (k.kind) {
    case KKind::torus: return in_torus_family(f, TorusFlagCatalog(*k.torus));
    case KKind::glu: return is_glu_flag(f, *k.glu);
    case KKind::classical: return is_classical_flag(f, *k.form);
    case KKind::g2: return is_g2_flag(f, *k.g2);
  }
  return false;
}

CertificateReport verify_certificate(const GroupH& h, const std::vector<OppositePair>& claims, const KSpec& k) {
  if (h.ambient_dim() != k.ambient_dim()) throw std::invalid_argument("verify_certificate: dimension mismatch");
  std::optional<TorusFlagCatalog> catalog;
  if (k.kind == KKind::torus) catalog.emplace(*k.torus);
  auto member = [&](const Flag& f) {
    if (f.ambient_dim() != h.ambient_dim() || f.is_trivial()) return false;
    return catalog ? in_torus_family(f, *catalog) : in_flag_family(f, k);
  };

  CertificateReport report;
  report.accepted = true;
  for (const auto& c : claims) {
    ClaimCheck check;
    check.flag_in_family = member(c.flag);
    check.opposite_in_family = member(c.opposite);
    check.flag_stable = c.flag.ambient_dim() == h.ambient_dim() && is_stable(c.flag, h);
    check.opposite_stable = c.opposite.ambient_dim() == h.ambient_dim() && is_stable(c.opposite, h);
    check.opposite = c.flag.ambient_dim() == c.opposite.ambient_dim() && !c.flag.is_trivial() &&
                     verify_opposite(c.flag, c.opposite).has_value();
    if (!check.ok()) report.accepted = false;
    report.claims.push_back(check);
  }
  if (catalog) {
    bool covered = true;
    for (const auto& t : catalog->minimal()) {
      const Flag f = catalog->flag(t.type);
      if (!is_stable(f, h)) continue;
      const bool found = std::any_of(claims.begin(), claims.end(), [&](const OppositePair& p) { return p.flag == f; });
      if (!found) {
        covered = false;
        report.uncovered.push_back(f);
      }
    }
    report.covers_minimal = covered;
    if (!covered) report.accepted = false;
  }
  return report;
}

}  // namespace relcr
