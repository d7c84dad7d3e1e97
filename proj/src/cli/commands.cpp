// SPDX-License-Identifier: Apache-2.0
#include "au/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "au/cli/csv.hpp"
#include "au/cli/report.hpp"
#include "au/construct.hpp"
#include "au/croft.hpp"
#include "au/detect.hpp"
#include "au/gallery.hpp"
#include "au/richardson.hpp"
#include "au/theorem.hpp"

namespace au::cli {
namespace {

struct Common {
  std::string input;
  std::string channel;
  std::string out;
};

struct AnalyzeOpts {
  Common c;
  std::string property = "au";
  double eps = 0.0;
  std::optional<double> from;
  std::optional<double> to;
};

struct TheoremOpts {
  Common c;
  std::string theorem_case;
  double eps = 0.0;
  int order = 2;
  bool no_derive = false;
  std::optional<double> bound_threshold;
  std::vector<std::string> maps;
};

struct ApproxOpts {
  Common c;
  double eps = 0.0;
  double T = 0.0;
  double delta = 0.0;
  int trials = 1000;
  std::uint64_t seed = 1;
};

struct DecomposeOpts {
  Common c;
  double eps = 0.0;
  int stages = 5;
};

struct RichardsonOpts {
  Common c;
  std::vector<double> coeffs;
  bool derive = false;
  int n = 1;
  double t = 0.0;
  double h = 0.0;
  std::string name;
  std::vector<double> params;
};

struct CroftOpts {
  std::string out;
  std::string name;
  std::vector<double> params;
  std::string t_values = "auto";
  int count = 32;
  std::int64_t n_max = 10000;
  double eps = 0.0;
};

struct GalleryOpts {
  std::string name;
  std::vector<double> params;
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  std::string out;
  bool tag_integers = false;
  bool alternate_rational = false;
  int derivatives = 0;
};

void add_common(CLI::App* sub, Common& c, bool input_required) {
  auto* in = sub->add_option("--input", c.input, "trajectory CSV");
  if (input_required) in->required();
  sub->add_option("--channel", c.channel, "value column (default f, else the first)");
  sub->add_option("--out", c.out, "write the report here instead of stdout");
}

std::string channel_name(const Trajectory& tr, const std::string& name) {
  if (!name.empty()) return name;
  if (tr.contains("f")) return "f";
  return tr.names.front();
}

const SampledFunction& pick_channel(const Trajectory& tr, const std::string& name) {
  return tr.channel(channel_name(tr, name));
}

GalleryFunction gallery_from(const std::string& name,
                             const std::vector<double>& params) {
  const auto kind = parse_gallery_kind(name);
  if (!kind) throw Error("unknown gallery member " + name);
  return make_gallery(*kind, params);
}

Json analyze(const AnalyzeOpts& o, Json report) {
  const Trajectory tr = ingest(o.c.input);
  const SampledFunction& f = pick_channel(tr, o.c.channel);
  TailWindow w = f.full_window();
  if (o.from || o.to) w = TailWindow(o.from.value_or(w.T), o.to.value_or(w.T_max));
  Verdict v;
  if (o.property == "au") {
    v = detect_au(f, o.eps, w);
  } else if (o.property == "uc") {
    v = detect_uc(f, o.eps, w);
  } else if (o.property == "limit") {
    v = detect_limit(f, w, o.eps);
  } else if (o.property == "vanishes") {
    v = detect_vanishes(f, w, o.eps);
  } else {
    throw Error("unknown property " + o.property);
  }
  v.subject = channel_name(tr, o.c.channel);
  report["grid"] = grid_json(f);
  report["status"] = std::string(to_string(v.status));
  report["verdict"] = verdict_json(v);
  report["recheck"] = recheck(v, f);
  return report;
}

Json theorem(const TheoremOpts& o, Json report) {
  const auto tc = parse_theorem_case(o.theorem_case);
  if (!tc) throw Error("unknown theorem case " + o.theorem_case);
  const Trajectory tr = ingest(o.c.input);
  std::string f_column = o.c.channel;
  Channels channels;
  std::vector<std::string> mapped;
  for (const auto& m : o.maps) {
    const auto eq = m.find('=');
    if (eq == std::string::npos) throw Error("--map expects ROLE=COLUMN, got " + m);
    const std::string role = m.substr(0, eq);
    const std::string column = m.substr(eq + 1);
    if (role == "f") {
      f_column = column;
    } else {
      channels.insert_or_assign(role, tr.channel(column));
    }
    mapped.push_back(column);
  }
  const SampledFunction& f = pick_channel(tr, f_column);
  const std::string f_name = f_column.empty()
                                 ? (tr.contains("f") ? "f" : tr.names.front())
                                 : f_column;
  for (std::size_t i = 0; i < tr.names.size(); ++i) {
    const std::string& n = tr.names[i];
    if (n == f_name || std::find(mapped.begin(), mapped.end(), n) != mapped.end()) {
      continue;
    }
    if (!channels.count(n)) channels.emplace(n, tr.channels[i]);
  }
  TheoremOptions opts;
  opts.order = o.order;
  opts.derive_missing = !o.no_derive;
  opts.bound_threshold = o.bound_threshold;
  const TheoremReport r = check_theorem(*tc, f, channels, o.eps, opts);
  report["grid"] = grid_json(f);
  report["status"] = r.consistent ? "Holds" : "Refuted";
  report["theorem"] = theorem_json(r);
  return report;
}

Json approx(const ApproxOpts& o, Json report) {
  const Trajectory tr = ingest(o.c.input);
  const SampledFunction& f = pick_channel(tr, o.c.channel);
  report["grid"] = grid_json(f);
  try {
    const PiecewiseAffine g = build_lipschitz_approximant(f, o.eps, {o.T, o.delta});
    const TubeCheck tube = verify_tube(f, g, o.eps);
    const LipschitzCheck lc = piecewise_lipschitz_check(g, o.trials, o.seed);
    report["status"] = tube.inside && lc.verified ? "Holds" : "Refuted";
    report["tube"] = {{"epsilon", o.eps},
                      {"inside", tube.inside},
                      {"max_deviation", tube.max_deviation},
                      {"argmax", tube.argmax}};
    report["lipschitz_check"] = {{"constant", lc.constant},
                                 {"bound", o.eps / o.delta},
                                 {"trials", o.trials},
                                 {"seed", o.seed},
                                 {"verified", lc.verified}};
    report["approximant"] = piecewise_json(g);
  } catch (const CertificateError& e) {
    report["status"] = "Refuted";
    report["error"] = e.what();
    report["witness"] = {{"s", e.witness().s},
                         {"t", e.witness().t},
                         {"gap", e.witness().gap},
                         {"delta", e.witness().delta}};
  }
  return report;
}

Json decompose(const DecomposeOpts& o, Json report) {
  const Trajectory tr = ingest(o.c.input);
  const SampledFunction& f = pick_channel(tr, o.c.channel);
  report["grid"] = grid_json(f);
  try {
    const URDecomposition d = ur_decompose(f, o.eps, o.stages);
    report["status"] = d.truncated ? "Inconclusive" : "Holds";
    report["decomposition"] = decomposition_json(d);
  } catch (const DecompositionError& e) {
    report["status"] = "Refuted";
    report["error"] = e.what();
    if (e.witness()) {
      report["witness"] = {{"s", e.witness()->s},
                           {"t", e.witness()->t},
                           {"gap", e.witness()->gap},
                           {"delta", e.witness()->delta}};
    } else {
      report["witness"] = nullptr;
    }
  }
  return report;
}

Json richardson(const RichardsonOpts& o, Json report) {
  if (!o.derive) {
    if (o.coeffs.empty()) throw Error("richardson needs --coeffs or --derive");
    const EliminationResult r = eliminate_full(TaylorCoefficients(o.coeffs));
    report["status"] = "ok";
    report["elimination"] = elimination_json(r, o.h);
    return report;
  }
  std::function<double(double)> f;
  Json source;
  std::optional<Trajectory> tr;
  if (!o.name.empty()) {
    f = gallery_evaluator(gallery_from(o.name, o.params));
    source = {{"gallery", o.name}, {"params", o.params}};
  } else if (!o.c.input.empty()) {
    tr = ingest(o.c.input);
    const SampledFunction& ch = pick_channel(*tr, o.c.channel);
    f = [&ch](double t) {
      const auto i = ch.index_of(t);
      if (!i) throw Error("richardson: t + h/2^i is not a grid time");
      return ch.value(*i);
    };
    source = {{"input", o.c.input}};
    report["grid"] = grid_json(ch);
  } else {
    throw Error("richardson --derive needs --name or --input");
  }
  const auto est = richardson_derivative(f, o.t, o.h, o.n);
  report["status"] = est.flagged ? "Inconclusive" : "Holds";
  report["estimate"] = {{"source", source},
                        {"n", o.n},
                        {"t", o.t},
                        {"h", o.h},
                        {"value", est.value},
                        {"condition", est.condition},
                        {"flagged", est.flagged},
                        {"note", "derivative estimator built on the elimination "
                                 "recursion (an extension)"}};
  return report;
}

std::vector<double> parse_t_values(const std::string& text, int count) {
  if (text == "auto") return default_croft_t_values(count);
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(std::stod(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

Json croft(const CroftOpts& o, Json report) {
  const GalleryFunction g = gallery_from(o.name, o.params);
  const std::vector<double> ts = parse_t_values(o.t_values, o.count);
  const CroftResult r = croft_test(gallery_evaluator(g), ts, o.n_max, o.eps);
  const bool any_refuted =
      std::any_of(r.sequences.begin(), r.sequences.end(),
                  [](const CroftSequence& s) { return s.status == Status::refuted; });
  report["status"] = r.cstar ? "Holds" : (any_refuted ? "Refuted" : "Inconclusive");
  report["croft"] = croft_json(r);
  return report;
}

Json gallery(const GalleryOpts& o, Json report, std::ostream& out) {
  const GalleryFunction g = gallery_from(o.name, o.params);
  const TailWindow w(o.from, o.to);
  const TagPolicy policy =
      o.alternate_rational ? TagPolicy::alternate_rational : TagPolicy::integers;
  const bool tagged = o.tag_integers || o.alternate_rational;
  SampledFunction f = sample(g, w, o.step, policy);
  if (!tagged) {
    std::vector<double> values(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      values[i] = gallery_eval(g, f.time(i), PointTag::none);
    }
    f = SampledFunction(std::vector<double>(f.times().begin(), f.times().end()),
                        std::move(values));
  }
  std::vector<std::string> names{"f"};
  std::vector<SampledFunction> channels{f};
  for (int k = 1; k <= o.derivatives; ++k) {
    if (!has_derivatives(g.kind)) {
      throw Error("no closed-form derivatives for " + o.name);
    }
    names.push_back(derivative_channel_name(k));
    SampledFunction d = sample_derivative(g, w, o.step, k);
    channels.push_back(f.with_values(std::vector<double>(d.values().begin(),
                                                         d.values().end())));
  }
  const std::string csv = format_trajectory(names, channels, tagged);
  if (o.out.empty()) {
    out << csv;
    return Json();
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw Error("cannot write " + o.out);
  file << csv;
  report["status"] = "ok";
  report["grid"] = grid_json(f);
  report["gallery"] = {{"name", o.name},
                       {"params", g.params},
                       {"channels", names},
                       {"tagged", tagged},
                       {"out", o.out}};
  return report;
}

int emit(const Json& report, const std::string& path, std::ostream& out) {
  const std::string text = dump(report);
  if (path.empty()) {
    out << text;
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path);
    file << text;
  }
  return exit_code_for(report["status"].get<std::string>());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Asymptotic uniformity checks on sampled trajectories", "aucheck"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  AnalyzeOpts an;
  auto* s_an = app.add_subcommand("analyze", "a.u. / uc / limit verdict");
  add_common(s_an, an.c, true);
  s_an->add_option("--property", an.property, "au|uc|limit|vanishes")
      ->check(CLI::IsMember({"au", "uc", "limit", "vanishes"}));
  s_an->add_option("--eps", an.eps)->required();
  s_an->add_option("--from", an.from, "window start");
  s_an->add_option("--to", an.to, "window end");

  TheoremOpts th;
  auto* s_th = app.add_subcommand("theorem", "theorem consistency report");
  add_common(s_th, th.c, true);
  s_th->add_option("--case", th.theorem_case,
                   "differential|integral|hadamard|higher-order|hardy-littlewood")
      ->required();
  s_th->add_option("--eps", th.eps)->required();
  s_th->add_option("--order", th.order, "derivative order (hadamard, higher-order)");
  s_th->add_flag("--no-derive", th.no_derive, "fail on missing derivative channels");
  s_th->add_option("--bound-threshold", th.bound_threshold);
  s_th->add_option("--map", th.maps, "ROLE=COLUMN, roles f, df, d2f, ..., g, h");

  ApproxOpts ap;
  auto* s_ap = app.add_subcommand("approx", "Lipschitz approximant in the eps-tube");
  add_common(s_ap, ap.c, true);
  s_ap->add_option("--eps", ap.eps)->required();
  s_ap->add_option("--T", ap.T)->required();
  s_ap->add_option("--delta", ap.delta)->required();
  s_ap->add_option("--trials", ap.trials);
  s_ap->add_option("--seed", ap.seed);

  DecomposeOpts de;
  auto* s_de = app.add_subcommand("decompose", "(u, r) decomposition");
  add_common(s_de, de.c, true);
  s_de->add_option("--eps", de.eps)->required();
  s_de->add_option("--stages", de.stages);

  RichardsonOpts ri;
  auto* s_ri = app.add_subcommand("richardson", "elimination table or derivative");
  add_common(s_ri, ri.c, false);
  s_ri->add_option("--coeffs", ri.coeffs)->delimiter(',');
  s_ri->add_option("--h", ri.h)->required();
  s_ri->add_flag("--derive", ri.derive);
  s_ri->add_option("--n", ri.n);
  s_ri->add_option("--t", ri.t);
  s_ri->add_option("--name", ri.name);
  s_ri->add_option("--params", ri.params)->delimiter(',');

  CroftOpts cr;
  auto* s_cr = app.add_subcommand("croft", "f(n t) sequence test");
  s_cr->add_option("--name", cr.name)->required();
  s_cr->add_option("--params", cr.params)->delimiter(',');
  s_cr->add_option("--t-values", cr.t_values, "auto or a comma list");
  s_cr->add_option("--count", cr.count, "number of automatic t values");
  s_cr->add_option("--n-max", cr.n_max);
  s_cr->add_option("--eps", cr.eps)->required();
  s_cr->add_option("--out", cr.out);

  GalleryOpts ga;
  auto* s_ga = app.add_subcommand("gallery", "export a gallery member as CSV");
  s_ga->add_option("--name", ga.name)->required();
  s_ga->add_option("--params", ga.params)->delimiter(',');
  s_ga->add_option("--from", ga.from)->required();
  s_ga->add_option("--to", ga.to)->required();
  s_ga->add_option("--step", ga.step)->required();
  s_ga->add_option("--out", ga.out, "CSV path (stdout when absent)");
  s_ga->add_flag("--tag-integers", ga.tag_integers);
  s_ga->add_flag("--alternate-rational", ga.alternate_rational);
  s_ga->add_option("--derivatives", ga.derivatives, "closed-form derivative channels");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "aucheck: " << e.what() << "\n";
    return 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const std::vector<std::string> echo(args.begin() + 1, args.end());
  Json report = report_header(name, echo);
  try {
    if (name == "analyze") return emit(analyze(an, std::move(report)), an.c.out, out);
    if (name == "theorem") return emit(theorem(th, std::move(report)), th.c.out, out);
    if (name == "approx") return emit(approx(ap, std::move(report)), ap.c.out, out);
    if (name == "decompose") return emit(decompose(de, std::move(report)), de.c.out, out);
    if (name == "richardson") return emit(richardson(ri, std::move(report)), ri.c.out, out);
    if (name == "croft") return emit(croft(cr, std::move(report)), cr.out, out);
    if (name == "gallery") {
      Json r = gallery(ga, std::move(report), out);
      return r.is_null() ? 0 : emit(r, "", out);
    }
  } catch (const std::exception& e) {
    err << "aucheck " << name << ": error: " << e.what() << "\n";
    return 1;
  }
  err << "aucheck: unknown command " << name << "\n";
  return 1;
}

}  // namespace au::cli
