#include <algorithm>

#include "skewdens/cobounding.hpp"
#include "skewdens/error.hpp"
#include "skewdens/skew.hpp"
#include "skewdens/subst_tools.hpp"

namespace skewdens {

MinimalityResult skew_minimal(std::shared_ptr<const Shift> x, const GroupMorphism& phi,
                              std::size_t max_len, std::size_t window_cap) {
  if (!x->is_minimal_kind()) {
    semantic_error("skew minimality is decided over substitution or periodic shifts");
  }
  const auto& g = phi.group();
  MinimalityResult out;
  if (g.order() == 1) {
    out.minimal = true;
    out.exact = true;
    out.certificate = "trivial-group";
    return out;
  }
  if (x->kind() == ShiftKind::periodic) {
    const Word& p = x->spec().periodic().word;
    out.evidence = prefix_evidence(*x, phi, p.size(), window_cap);
    out.minimal = g.element_order(phi(p)) == g.order();
    out.exact = true;
    out.certificate = "periodic-orbit";
    return out;
  }
  out.evidence = prefix_evidence(*x, phi, max_len, window_cap);
  for (const auto& ev : out.evidence) {
    if (!ev.certified) {
      out.warnings.push_back("return words of the length-" + std::to_string(ev.length) +
                             " prefix not certified within the window cap");
      continue;
    }
    if (ev.generated.order() != g.order()) {
      out.minimal = false;
      out.exact = true;
      out.certificate = "return-images";
      return out;
    }
  }
  auto inv = invertibility_order(x->spec().substitution().images, phi);
  if (inv.order) {
    auto ss = skew_substitution(*x, phi);
    if (ss.components.size() > 1) {
      out.minimal = false;
      out.exact = true;
      out.certificate = "skew-substitution";
      return out;
    }
    if (ss.primitive[0]) {
      out.minimal = true;
      out.exact = true;
      out.certificate = "skew-substitution";
      return out;
    }
  }
  auto dec = minimal_decomposition(x, phi, max_len, window_cap);
  if (dec.h.order() != g.order()) {
    out.minimal = false;
    out.exact = true;
    out.certificate = "cobounding-map";
    return out;
  }
  out.minimal = true;
  out.exact = false;
  out.certificate = "uncertified";
  out.warnings.push_back("no proper modulus found up to cylinder length " +
                         std::to_string(max_len) + "; minimality not certified");
  return out;
}

}  // namespace skewdens
