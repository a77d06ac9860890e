#include "report.hpp"

namespace spectra::report {

namespace {

Json bracket(std::size_t lo, std::size_t hi) { return Json::array({lo, hi}); }

} // namespace

Json to_json(const RepeatPair& p) {
  return {{"pos1", p.pos1}, {"pos2", p.pos2}, {"length", p.length}};
}

Json to_json(const InterleavedWitness& w) {
  return {{"a1", w.a1},
          {"b1", w.b1},
          {"a2", w.a2},
          {"b2", w.b2},
          {"length", w.length},
          {"pair_a", to_json(w.pair_a)},
          {"pair_b", to_json(w.pair_b)}};
}

Json to_json(const MBound& m) {
  Json j = {{"d", m.d},
            {"length", m.length},
            {"lower", m.lower},
            {"upper", m.upper},
            {"bracket", bracket(m.lower, m.upper)},
            {"exact", m.exact}};
  if (m.trivial_upper) j["trivial_upper"] = true;
  return j;
}

Json to_json(const NoisyThreshold& t) {
  // multiples m of D with l_crit + m*D inside the bracket; null when too many
  Json multiples = nullptr;
  if (t.D > 0) {
    const std::size_t first = (t.lower - t.l_crit + t.D - 1) / t.D;
    const std::size_t last = (t.upper - t.l_crit) / t.D;
    if (last < first) {
      multiples = Json::array();
    } else if (last - first < 16) {
      multiples = Json::array();
      for (std::size_t m = first; m <= last; ++m) multiples.push_back(m);
    }
  }
  return {{"D", t.D},
          {"lower", t.lower},
          {"upper", t.upper},
          {"bracket", bracket(t.lower, t.upper)},
          {"argmin_k", t.argmin_k},
          {"exact", t.exact},
          {"too_wide", t.too_wide},
          {"multiples_of_D", multiples}};
}

Json to_json(const AmbiguityReport& a) {
  Json recs = Json::array();
  for (const auto& r : a.reconstructions) recs.push_back(r.canonical().str());
  return {{"reconstructions", recs}, {"move", a.move}};
}

Json to_json(const Certificate& c) {
  const auto& t = c.threshold;
  return {{"schema", kSchema},
          {"consistent", c.consistent},
          {"certified", c.certified},
          {"verdict", c.certified ? "certified" : "not_certified"},
          {"reason", c.reason},
          {"G", c.candidate.length()},
          {"L", c.L},
          {"D", c.D},
          {"l_crit_candidate", t.l_crit},
          {"l_tilde_crit_candidate",
           {{"lower", t.lower},
            {"upper", t.upper},
            {"bracket", bracket(t.lower, t.upper)},
            {"exact", t.exact}}},
          {"warnings", t.warnings}};
}

} // namespace spectra::report
