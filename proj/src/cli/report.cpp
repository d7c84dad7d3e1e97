// SPDX-License-Identifier: Apache-2.0
#include "au/cli/report.hpp"

#include <cmath>

#include "au/cli/csv.hpp"

namespace au::cli {
namespace {

void write_string(std::string& out, const std::string& s) {
  // nlohmann's escaping of a lone string is stable and valid JSON.
  out += Json(s).dump();
}

void write(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        write_string(out, it.key());
        out += ": ";
        write(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        write(out, el, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

Json optional_double(const std::optional<double>& x) {
  return x ? Json(*x) : Json(nullptr);
}

}  // namespace

Json report_header(std::string_view command,
                   const std::vector<std::string>& args) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "aucheck";
  j["tool_version"] = std::string(kToolVersion);
  j["command"] = {{"name", std::string(command)}, {"args", args}};
  return j;
}

Json grid_json(const SampledFunction& f) {
  const IndexRange all{0, f.size()};
  return {{"points", f.size()},
          {"t_first", f.front_time()},
          {"t_last", f.back_time()},
          {"min_spacing", f.min_spacing(all)},
          {"max_spacing", f.max_spacing(all)}};
}

Json window_json(const TailWindow& w) {
  return {{"T", w.T}, {"T_max", w.T_max}};
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["property"] = std::string(to_string(v.property));
  j["subject"] = v.subject;
  j["status"] = std::string(to_string(v.status));
  j["epsilon"] = v.epsilon;
  j["window"] = window_json(v.window);
  j["resolution"] = v.resolution;
  if (v.certificate) {
    j["certificate"] = {{"epsilon", v.certificate->epsilon},
                        {"T", v.certificate->T},
                        {"delta", v.certificate->delta},
                        {"limit_estimate",
                         optional_double(v.certificate->limit_estimate)}};
  } else {
    j["certificate"] = nullptr;
  }
  if (v.witness) {
    j["witness"] = {{"s", v.witness->s},
                    {"t", v.witness->t},
                    {"gap", v.witness->gap},
                    {"delta", v.witness->delta}};
  } else {
    j["witness"] = nullptr;
  }
  j["notes"] = v.notes;
  return j;
}

Json theorem_json(const TheoremReport& r) {
  Json j;
  j["case"] = std::string(to_string(r.theorem_case));
  j["consistent"] = r.consistent;
  Json imps = Json::array();
  for (const auto& imp : r.implications) {
    Json hyps = Json::array();
    for (const auto& v : imp.hypotheses) hyps.push_back(verdict_json(v));
    Json concls = Json::array();
    for (const auto& v : imp.conclusions) concls.push_back(verdict_json(v));
    imps.push_back({{"statement", imp.statement},
                    {"consistent", imp.consistent},
                    {"hypotheses", std::move(hyps)},
                    {"conclusions", std::move(concls)}});
  }
  j["implications"] = std::move(imps);
  Json obs = Json::array();
  for (const auto& v : r.observations) obs.push_back(verdict_json(v));
  j["observations"] = std::move(obs);
  j["derived_channels"] = r.derived_channels;
  j["detail"] = r.detail;
  return j;
}

Json piecewise_json(const PiecewiseAffine& g) {
  return {{"domain_start", g.domain_start()},
          {"lipschitz", g.lipschitz()},
          {"nodes", g.nodes()},
          {"node_values", g.node_values()},
          {"slopes", g.slopes()}};
}

Json decomposition_json(const URDecomposition& d) {
  Json stages = Json::array();
  for (const auto& s : d.stages) {
    stages.push_back({{"k", s.k},
                      {"epsilon", s.epsilon},
                      {"T", s.T},
                      {"T_end", s.T_end},
                      {"delta", s.delta},
                      {"lipschitz", s.lipschitz},
                      {"sup_residual", s.sup_residual}});
  }
  return {{"stages", std::move(stages)},
          {"truncated", d.truncated},
          {"truncation", d.truncation},
          {"u", piecewise_json(d.u)}};
}

Json croft_json(const CroftResult& r) {
  Json seqs = Json::array();
  for (const auto& s : r.sequences) {
    seqs.push_back({{"t", s.t},
                    {"status", std::string(to_string(s.status))},
                    {"worst_n", s.worst_n},
                    {"worst_value", s.worst_value}});
  }
  return {{"epsilon", r.epsilon},
          {"n_first", r.n_first},
          {"n_max", r.n_max},
          {"c_fraction", r.c_fraction},
          {"cstar", r.cstar},
          {"sequences", std::move(seqs)}};
}

Json elimination_json(const EliminationResult& r, double h) {
  Json levels = Json::array();
  for (const auto& level : r.table.levels) levels.push_back(level.c);
  return {{"final_coefficient", r.final_coefficient},
          {"kappa", r.table.kappa},
          {"h", h},
          {"final_value", remainder_poly(r.table.levels.back(), h)},
          {"levels", std::move(levels)}};
}

std::string dump(const Json& j) {
  std::string out;
  write(out, j, 0);
  out += "\n";
  return out;
}

int exit_code_for(std::string_view status) {
  if (status == "Holds" || status == "ok") return 0;
  if (status == "Inconclusive") return 2;
  return 1;
}

}  // namespace au::cli
