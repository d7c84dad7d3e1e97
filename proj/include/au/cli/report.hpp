// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "au/construct.hpp"
#include "au/croft.hpp"
#include "au/funcspace.hpp"
#include "au/richardson.hpp"
#include "au/theorem.hpp"
#include "au/verdict.hpp"

namespace au::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Report skeleton: schema version, tool version, command echo.
Json report_header(std::string_view command, const std::vector<std::string>& args);

Json grid_json(const SampledFunction& f);
Json window_json(const TailWindow& w);
Json verdict_json(const Verdict& v);
Json theorem_json(const TheoremReport& r);
Json piecewise_json(const PiecewiseAffine& g);
Json decomposition_json(const URDecomposition& d);
Json croft_json(const CroftResult& r);
Json elimination_json(const EliminationResult& r, double h);

/// Deterministic text: two-space indent, keys in insertion order, doubles
/// with 17 significant digits, non-finite doubles as null.
std::string dump(const Json& j);

/// Exit code for a status string: "Holds"/"ok" 0, "Refuted"/"error" 1,
/// "Inconclusive" 2.
int exit_code_for(std::string_view status);

}  // namespace au::cli
