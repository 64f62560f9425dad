#pragma once

#include "relcr/g2.hpp"
#include "relcr/structcr.hpp"
#include "relcr/torus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace relcr {

enum class KKind { torus, glu, classical, g2 };
std::string k_kind_name(KKind k);

// The subgroup K of GL(V) in one of the supported shapes.
struct KSpec {
  KKind kind = KKind::torus;
  std::optional<TorusK> torus;
  std::optional<GLUSplit> glu;
  std::optional<BilinForm> form;
  std::optional<G2Data> g2;

  std::size_t ambient_dim() const;
};

struct ClaimCheck {
  bool flag_in_family = false;
  bool flag_stable = false;
  bool opposite_in_family = false;
  bool opposite_stable = false;
  bool opposite = false;

  bool ok() const { return flag_in_family && flag_stable && opposite_in_family && opposite_stable && opposite; }
};

struct CertificateReport {
  bool accepted = false;
  std::vector<ClaimCheck> claims;
  // Torus K only: every H-stable member of MF_K occurs among the claimed flags.
  std::optional<bool> covers_minimal;
  std::vector<Flag> uncovered;
};

// Checks each claimed (flag, opposite) pair: both in F_K, both H-stable,
// and opposite. Never claims completeness except for torus K, where the
// minimal flags are enumerated.
CertificateReport verify_certificate(const GroupH& h, const std::vector<OppositePair>& claims, const KSpec& k);

bool in_flag_family(const Flag& f, const KSpec& k);

}  // namespace relcr
