#pragma once

#include "locoloc/group_hom.hpp"

namespace locoloc {

/// How the ends of a sequence are treated: joined into a cycle, padded with
/// zero groups, or left unchecked.
enum class Closure { Cyclic, ZeroEnds, Open };

struct ExactSequenceReport {
  std::vector<std::string> labels;
  std::vector<std::string> groups;
  std::vector<bool> exact_at;
  std::vector<std::string> witnesses;  // one line per failing node
  std::vector<std::string> notes;

  bool exact() const {
    return std::all_of(exact_at.begin(), exact_at.end(), [](bool b) { return b; });
  }
  void add_node(std::string label, std::string group, bool ok, const std::string& why = {}) {
    if (!ok) witnesses.push_back("node " + std::to_string(labels.size()) + " (" + label + "): " + why);
    labels.push_back(std::move(label));
    groups.push_back(std::move(group));
    exact_at.push_back(ok);
  }
};

/// Why the sequence in -> G -> out is not exact at G, or empty when it is.
inline std::string exactness_defect(const GroupHom& in, const GroupHom& out) {
  if (!(in.codomain() == out.domain())) return "maps do not compose";
  if (!out.after(in).is_zero()) return "composite is nonzero";
  const auto h = homology_at(in, out);
  if (!h->is_trivial()) return "ker/im = " + h->to_string();
  return {};
}

/// Exactness of G_0 -f_0-> G_1 -f_1-> ... at every node. For Cyclic the last
/// map must end at G_0; otherwise maps.size() == labels.size() - 1.
inline ExactSequenceReport check_exact(const std::vector<std::string>& labels, const std::vector<GroupHom>& maps,
                                       Closure closure) {
  const std::size_t n = labels.size();
  const std::size_t expect = closure == Closure::Cyclic ? n : (n == 0 ? 0 : n - 1);
  if (maps.size() != expect || (closure != Closure::Cyclic && n < 2))
    throw std::invalid_argument("check_exact: wrong number of maps");
  ExactSequenceReport r;
  for (std::size_t i = 0; i < n; ++i) {
    const FgAbGroup& G = i < maps.size() ? maps[i].domain() : maps[i - 1].codomain();
    std::optional<GroupHom> in, out;
    if (i > 0) in = maps[i - 1];
    else if (closure == Closure::Cyclic) in = maps[n - 1];
    if (i < maps.size()) out = maps[i];
    if (closure == Closure::Open && (!in || !out)) {
      r.add_node(labels[i], G.to_string(), true);
      continue;
    }
    if (!in) in = GroupHom::zero(FgAbGroup{}, G);
    if (!out) out = GroupHom::zero(G, FgAbGroup{});
    const std::string why = exactness_defect(*in, *out);
    r.add_node(labels[i], G.to_string(), why.empty(), why);
  }
  return r;
}

}  // namespace locoloc
