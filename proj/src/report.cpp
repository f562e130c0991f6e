#include "catsolve/report.hpp"

#include <sstream>

namespace catsolve {

using nlohmann::json;

std::string rational_string(const BigRat& q) { return q.num().get_str() + "/" + q.den().get_str(); }

json to_json(const GenericityResult& g) {
  json j;
  if (auto* z = std::get_if<ZeroDimensional>(&g.dimension)) {
    j["dimension"] = "ZeroDimensional";
    j["degree"] = z->degree;
  } else {
    j["dimension"] = "PositiveDimensional";
    j["independent"] = std::get<PositiveDimensional>(g.dimension).independent;
  }
  json samples = json::array();
  for (const auto& [p, t0] : g.samples) samples.push_back({{"prime", p}, {"t", t0}});
  j["samples"] = samples;
  j["basis_size"] = g.basis_size;
  return j;
}

json to_json(const DeformationParams& d) {
  json j;
  j["alpha"] = d.alpha;
  j["beta"] = d.beta;
  j["M"] = d.M;
  j["gamma"] = d.gamma;
  j["epsilon"] = d.epsilon ? json(rational_string(*d.epsilon)) : json("eps");
  return j;
}

json to_json(const PuiseuxReport& r) {
  json j;
  j["status"] = r.status == PuiseuxStatus::certified ? "certified" : "inconclusive";
  j["total_distinct"] = r.total_distinct;
  j["certified_to"] = r.certified_to;
  json roots = json::array();
  for (const auto& root : r.roots)
    roots.push_back({{"valuation", rational_string(root.valuation)},
                     {"leading_minpoly", root.leading_minpoly.to_string("c")},
                     {"count", root.count}});
  j["roots"] = roots;
  json branches = json::array();
  for (const auto& b : r.branches) branches.push_back(b.to_string());
  j["branches"] = branches;
  j["notes"] = r.notes;
  return j;
}

json to_json(const DDESystem& sys, const SolveReport& rep, bool with_timings) {
  json j;
  j["schema"] = 1;
  j["system"] = print_dde(sys);
  j["status"] = to_string(rep.status);
  j["series_order"] = rep.series_order;
  j["genericity"] = rep.genericity ? to_json(*rep.genericity) : json(nullptr);
  j["deformation_used"] = rep.deformation_used;
  j["deformation"] = rep.deformation ? to_json(*rep.deformation) : json(nullptr);
  j["deformed_genericity"] = rep.deformed_genericity ? to_json(*rep.deformed_genericity) : json(nullptr);
  j["eliminant"] = rep.eliminant ? json(rep.eliminant->to_string()) : json(nullptr);
  j["minimal"] = rep.minimal ? json(rep.minimal->to_string()) : json(nullptr);
  j["certificate"] = to_string(rep.certificate);
  j["sizes"] = rep.sizes;
  j["messages"] = rep.messages;
  if (with_timings) j["timings"] = rep.timings;
  return j;
}

std::string to_text(const PuiseuxReport& r) {
  std::ostringstream out;
  out << "puiseux: " << (r.status == PuiseuxStatus::certified ? "certified" : "inconclusive") << ", "
      << r.total_distinct << " distinct nonzero roots (series order " << r.certified_to << ")\n";
  for (const auto& root : r.roots)
    out << "  valuation " << root.valuation.to_string() << ", leading coefficient root of "
        << root.leading_minpoly.to_string("c") << ", count " << root.count << "\n";
  for (const auto& b : r.branches) out << "  branch " << b.to_string() << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  return out.str();
}

std::string to_text(const SolveReport& rep) {
  std::ostringstream out;
  out << "status: " << to_string(rep.status) << "\n";
  out << "series order: " << rep.series_order << "\n";
  if (rep.genericity) out << "genericity: " << to_string(rep.genericity->dimension) << "\n";
  if (rep.deformation_used) {
    out << "deformation: alpha " << rep.deformation->alpha << ", beta " << rep.deformation->beta << "\n";
    if (rep.deformed_genericity) out << "deformed genericity: " << to_string(rep.deformed_genericity->dimension) << "\n";
  }
  if (rep.eliminant)
    out << "eliminant (degrees " << rep.eliminant->degree(0) << ", " << rep.eliminant->degree(1)
        << "): " << rep.eliminant->to_string() << "\n";
  if (rep.minimal) out << "minimal: " << rep.minimal->to_string() << "\n";
  out << "certificate: " << to_string(rep.certificate) << "\n";
  for (const auto& m : rep.messages) out << "note: " << m << "\n";
  return out.str();
}

}  // namespace catsolve
