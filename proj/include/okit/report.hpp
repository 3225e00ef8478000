#pragma once

#include <json.hpp>

#include "okit/verify.hpp"

namespace okit {

using ordered_json = nlohmann::ordered_json;

namespace report {

/// Weights serialize as arrays of integers in fundamental-weight
/// coordinates; all catalogued weights are integral.
inline ordered_json weight_json(const Weight& w) {
  ordered_json a = ordered_json::array();
  for (const auto& c : w.fund) {
    if (c.get_den() != 1) throw SpecError("non-integral weight in report");
    a.push_back(static_cast<long>(c.get_num().get_si()));
  }
  return a;
}

/// Characters as sorted [weight, dimension] pairs.
inline ordered_json character_json(const FormalCharacter& ch) {
  ordered_json a = ordered_json::array();
  for (const auto& [w, d] : ch) a.push_back({weight_json(w), d});
  return a;
}

inline ordered_json multiset_json(const std::map<Weight, int>& ms) {
  ordered_json a = ordered_json::array();
  for (const auto& [w, c] : ms) a.push_back({weight_json(w), c});
  return a;
}

inline ordered_json matrix_json(const RatMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m.get(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ordered_json block_label_json(const BlockLabel& l) {
  ordered_json j;
  j["rep"] = weight_json(l.rep);
  ordered_json e = ordered_json::array();
  for (const auto& x : l.eigen) e.push_back(to_string(x));
  j["eigen"] = std::move(e);
  return j;
}

inline ordered_json module_json(const ModPtr& m) {
  ordered_json j;
  j["schema"] = "1";
  j["kind"] = "module";
  j["algebra"] = to_string(m->type);
  j["provenance"] = m->provenance;
  j["top"] = weight_json(m->top);
  j["depth"] = m->depth;
  j["total_dim"] = m->total_dim();
  j["character"] = character_json(character(m));
  j["maximal_vectors"] = multiset_json(maximal_vector_weights(*m));
  return j;
}

inline ordered_json flag_json(const FlagReport& f) {
  ordered_json j;
  ordered_json order = ordered_json::array();
  for (const auto& w : f.weights) order.push_back(weight_json(w));
  j["order"] = std::move(order);
  j["multiset"] = multiset_json(f.multiset);
  return j;
}

inline ordered_json indec_json(const IndecomposabilityEvidence& ev) {
  ordered_json j;
  j["checked"] = ev.checked;
  j["indecomposable"] = ev.indecomposable;
  j["commutant_dim"] = ev.commutant_dim;
  j["margin"] = ev.margin;
  j["window_depth"] = ev.window_depth;
  return j;
}

inline ordered_json certificate_json(const DecompositionCertificate& cert,
                                     bool emit_evidence = false) {
  ordered_json j;
  j["schema"] = "1";
  j["kind"] = "decomposition-certificate";
  j["target"] = cert.target;
  j["valid"] = cert.valid;
  j["complete"] = cert.complete;
  if (!cert.failure.empty()) j["failure"] = cert.failure;
  ordered_json dir;
  dir["independent"] = cert.direct.independent;
  dir["bounded"] = cert.direct.bounded;
  dir["spans"] = cert.direct.spans;
  if (!cert.direct.failure.empty()) dir["failure"] = cert.direct.failure;
  if (emit_evidence) {
    ordered_json ranks = ordered_json::array();
    for (const auto& [w, r] : cert.direct.ranks)
      ranks.push_back({weight_json(w), r});
    dir["maximal_vector_ranks"] = std::move(ranks);
  }
  j["direct"] = std::move(dir);
  ordered_json parts = ordered_json::array();
  for (const auto& s : cert.summands) {
    ordered_json p;
    p["kind"] = s.kind;
    p["highest_weight"] = weight_json(s.hw);
    p["dim"] = s.part.total_dim();
    p["character"] = character_json(s.part.character());
    if (s.indec.checked) p["indecomposable_within_window"] = indec_json(s.indec);
    if (s.flag) p["flag"] = flag_json(*s.flag);
    if (!s.note.empty()) p["note"] = s.note;
    if (emit_evidence) {
      ordered_json basis = ordered_json::array();
      for (const auto& [w, b] : s.part.basis)
        basis.push_back({weight_json(w), matrix_json(b)});
      p["basis"] = std::move(basis);
    }
    parts.push_back(std::move(p));
  }
  j["summands"] = std::move(parts);
  if (!cert.notes.empty()) j["notes"] = cert.notes;
  return j;
}

inline ordered_json blocks_json(const std::vector<BlockSummand>& blocks) {
  ordered_json a = ordered_json::array();
  for (const auto& b : blocks) {
    ordered_json j;
    j["label"] = block_label_json(b.label);
    j["mechanism"] = b.mechanism;
    j["dim"] = b.part.total_dim();
    j["character"] = character_json(b.part.character());
    a.push_back(std::move(j));
  }
  return a;
}

inline ordered_json verification_json(const VerifySummary& s) {
  ordered_json j;
  j["schema"] = "1";
  j["kind"] = "verification";
  j["pass"] = s.all_pass();
  ordered_json rs = ordered_json::array();
  for (const auto& r : s.results) {
    ordered_json e;
    // timings stay in the text report; JSON output is byte-reproducible
    e["id"] = r.id;
    e["pass"] = r.pass;
    e["detail"] = r.detail;
    rs.push_back(std::move(e));
  }
  j["results"] = std::move(rs);
  return j;
}

}  // namespace report

}  // namespace okit
