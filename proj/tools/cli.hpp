#pragma once

// Command implementations for the vkd executable. run() never exits the
// process; it returns the exit status.
//
// Exit status: 0 success, 1 usage or input-format error, 2 precondition
// failure, 3 guard cap exceeded.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <vkd/vkd.hpp>

namespace vkd::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kPrecondition = 2,
  kGuardCap = 3,
};

namespace detail {

  inline Json meta(std::string const& command, Json params) {
    Json m;
    m["tool"] = "vkd";
    m["version"] = kVersion;
    m["command"] = command;
    m["params"] = std::move(params);
    return m;
  }

  inline Presentation load_presentation_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot open presentation file '" + path + "'");
    }
    return read_presentation(in);
  }

  inline Diagram load_diagram_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot open diagram file '" + path + "'");
    }
    return load_diagram(in);
  }

  inline Json occurrence_json(PieceOccurrence const& o) {
    return Json{{"relator", o.relator}, {"sign", o.sign}, {"offset", o.offset}};
  }

  inline Json filling_json(Filling const& f) {
    Json factors = Json::array();
    for (auto const& x : f.factors) {
      factors.push_back({{"conjugator", format_word(x.conjugator)},
                         {"relator", x.relator},
                         {"sign", x.sign}});
    }
    return Json{{"area", f.area()}, {"factors", std::move(factors)}};
  }

  inline std::vector<Word> parse_h_list(std::string const& text, int m) {
    std::vector<Word> hs;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ',')) {
      hs.push_back(parse_word(part, m));
    }
    if (!text.empty() && text.back() == ',') {
      hs.emplace_back();
    }
    if (text.empty()) {
      hs.emplace_back();
    }
    return hs;
  }

  inline std::string join_hs(std::vector<Word> const& hs) {
    std::string s;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      s += (i ? "|" : "") + format_word(hs[i]);
    }
    return s;
  }

  // Writes to `path`, or to `out` when path is empty.
  inline void emit(std::string const& text, std::string const& path,
                   std::ostream& out) {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      throw ParseError("cannot write '" + path + "'");
    }
    f << text;
  }

  inline std::string dump(Json const& j) { return j.dump(2) + "\n"; }

  inline std::uint64_t guard_cap_from_env(std::uint64_t fallback) {
    char const* v = std::getenv("VKD_GUARD_CAP");
    if (v == nullptr || *v == '\0') {
      return fallback;
    }
    std::string const s(v);
    if (s.find_first_not_of("0123456789") != std::string::npos
        || s.size() > 19) {
      throw ParseError("VKD_GUARD_CAP must be a positive integer, got '" + s
                       + "'");
    }
    return std::stoull(s);
  }

  inline std::string optional_rational(std::optional<Rational> const& r) {
    return r ? to_string(*r) : std::string();
  }

}  // namespace detail

struct SampleArgs {
  int m = 2;
  std::string d = "1/4";
  std::size_t L = 8;
  std::uint64_t seed = 0;
  std::string out;
};

inline int cmd_sample(SampleArgs const& a, std::ostream& out) {
  DensityParams params{a.m, parse_rational(a.d), a.L, a.seed};
  auto const p = sample_presentation(params);
  std::ostringstream text;
  write_presentation(
      text, p,
      {"tool vkd " + std::string(kVersion), "command sample",
       "generator " + std::string(SplitMix64::kAlgorithm),
       "seed " + std::to_string(a.seed),
       "params m=" + std::to_string(a.m) + " d=" + to_string(params.d)
           + " L=" + std::to_string(a.L),
       "relators " + std::to_string(p.size())});
  detail::emit(text.str(), a.out, out);
  return kOk;
}

struct CheckArgs {
  std::string presentation;
  std::string lambda = "1/6";
};

inline int cmd_check(CheckArgs const& a, std::ostream& out) {
  auto const p = detail::load_presentation_file(a.presentation);
  Rational const lambda = parse_rational(a.lambda);
  auto const table = compute_pieces(p);
  auto const v = check_metric_condition(p, table, lambda);
  Json j;
  j["meta"] = detail::meta("check-smallcancel", {{"presentation", a.presentation},
                                                  {"lambda", to_string(lambda)}});
  j["lambda"] = to_string(lambda);
  j["verdict"] = v.holds;
  j["max_piece"] = table.overall_max();
  j["max_piece_ratio"] = to_string(v.max_piece_ratio);
  j["pieces"] = table.max_piece;
  if (v.failing_relator) {
    j["failing_relator"] = *v.failing_relator;
  } else {
    j["failing_relator"] = nullptr;
  }
  if (v.witness) {
    j["witness"] = {{"word", format_word(v.witness->word)},
                    {"length", v.witness->word.size()},
                    {"first", detail::occurrence_json(v.witness->first)},
                    {"second", detail::occurrence_json(v.witness->second)}};
  } else {
    j["witness"] = nullptr;
  }
  out << detail::dump(j);
  return kOk;
}

struct DehnArgs {
  std::string presentation;
  std::string word;
};

inline int cmd_dehn(DehnArgs const& a, std::ostream& out) {
  auto const p = detail::load_presentation_file(a.presentation);
  Word const w = parse_word(a.word, p.generators());
  DehnSolver const solver(p);
  auto const r = solver.reduce(w);
  Json j;
  j["meta"] = detail::meta("dehn", {{"presentation", a.presentation},
                                    {"word", a.word}});
  j["word"] = format_word(w);
  j["reduced"] = format_word(r.reduced);
  j["trivial"] = r.trivial();
  // In heuristic mode a nonempty result does not prove nontriviality.
  j["mode"] = r.complete ? "decision" : "heuristic";
  j["steps"] = r.trace.size();
  Json trace = Json::array();
  for (auto const& s : r.trace) {
    trace.push_back({{"position", s.position},
                     {"removed", format_word(s.removed)},
                     {"inserted", format_word(s.inserted)},
                     {"relator", s.relator},
                     {"sign", s.sign},
                     {"offset", s.offset}});
  }
  j["trace"] = std::move(trace);
  j["filling"] = r.trivial() ? detail::filling_json(solver.trace_filling(r))
                             : Json(nullptr);
  out << detail::dump(j);
  return kOk;
}

struct FillingArgs {
  std::string presentation;
  std::string word;
  std::size_t max_area = 2;
  std::size_t max_conj = 2;
};

inline int cmd_filling(FillingArgs const& a, std::ostream& out) {
  auto const p = detail::load_presentation_file(a.presentation);
  Word const w = parse_word(a.word, p.generators());
  auto const f = FillingSearch(p, {a.max_area, a.max_conj}).find(w);
  Json j;
  j["meta"] = detail::meta("filling", {{"presentation", a.presentation},
                                       {"word", a.word},
                                       {"max_area", a.max_area},
                                       {"max_conj", a.max_conj}});
  j["word"] = format_word(w);
  j["found"] = f.has_value();
  j["filling"] = f ? detail::filling_json(*f) : Json(nullptr);
  out << detail::dump(j);
  return kOk;
}

struct VerifyArgs {
  std::string diagram;
  std::string presentation;
  std::optional<std::string> word;
  std::optional<std::string> g;
  std::optional<std::string> hs;
};

inline int cmd_verify(VerifyArgs const& a, std::ostream& out) {
  auto const p = detail::load_presentation_file(a.presentation);
  auto const d = detail::load_diagram_file(a.diagram);
  Json params{{"diagram", a.diagram}, {"presentation", a.presentation}};
  if (a.word) {
    params["word"] = *a.word;
  }
  if (a.g) {
    params["g"] = *a.g;
    params["hs"] = a.hs.value_or("");
  }
  Json j;
  j["meta"] = detail::meta("verify-diagram", std::move(params));

  // Without --word only the structure is checked, not the boundary reading.
  ValidationReport report;
  if (a.word) {
    report = validate(d, p, parse_word(*a.word, p.generators()));
  } else {
    report = validate(d, p, Word());
    std::erase_if(report.issues, [](DiagramIssue const& i) {
      return i.code == "boundary_word";
    });
  }
  j["ok"] = report.ok();
  Json issues = Json::array();
  for (auto const& i : report.issues) {
    Json e{{"code", i.code}, {"message", i.message}};
    e["halfedge"] = i.halfedge ? Json(*i.halfedge) : Json(nullptr);
    e["face"] = i.face ? Json(*i.face) : Json(nullptr);
    issues.push_back(std::move(e));
  }
  j["issues"] = std::move(issues);
  if (report.ok()) {
    Json contributions = Json::array();
    for (auto const& f : d.faces) {
      if (!f.is_outer()) {
        contributions.push_back(outer_contribution(d, f.id));
      }
    }
    j["metrics"] = {{"area", area(d)},
                    {"boundary", boundary_length(d)},
                    {"boundary_word", format_word(boundary_word(d))},
                    {"contributions", std::move(contributions)}};
    if (a.g) {
      TightWord const tw{parse_word(*a.g, p.generators()),
                         detail::parse_h_list(a.hs.value_or(""),
                                              p.generators())};
      auto const blocks = block_decomposition(tw);
      Json counts = Json::array();
      for (auto const& f : d.faces) {
        if (!f.is_outer()) {
          auto const c = count_sg_sh(d, f.id, blocks);
          counts.push_back({{"face", f.id}, {"s_g", c.s_g}, {"s_h", c.s_h}});
        }
      }
      j["metrics"]["blocks"] = std::move(counts);
    }
  } else {
    j["metrics"] = nullptr;
  }
  out << detail::dump(j);
  return kOk;
}

struct SearchArgs {
  std::string presentation;
  std::size_t max_width = 1;
  std::size_t max_g = 1;
  std::size_t max_h = 0;
  std::string method = "dehn";
  std::string format = "json";
  unsigned threads = 1;
  std::optional<std::string> beta;
  bool timing = false;
  std::string out;
};

// CSV columns, fixed: width,g,hs,boundary,cost,h_sum,cprime_bound,cprime_ok,
// liniso_bound,liniso_ok,violation. hs joins the h_i with '|'; empty cells
// mean "not computed".
inline std::string search_csv(SearchReport const& r, Json const& meta) {
  std::ostringstream s;
  s << "# " << meta.dump() << '\n';
  s << "width,g,hs,boundary,cost,h_sum,cprime_bound,cprime_ok,liniso_bound,"
       "liniso_ok,violation\n";
  for (auto const& rel : r.relations) {
    s << rel.word.width() << ',' << format_word(rel.word.g) << ','
      << detail::join_hs(rel.word.hs) << ',' << format_word(rel.boundary)
      << ',' << rel.cost << ',' << rel.word.h_sum() << ','
      << to_string(rel.cprime) << ',' << (rel.cprime_ok ? 1 : 0) << ','
      << detail::optional_rational(rel.liniso) << ','
      << (rel.liniso_ok ? (*rel.liniso_ok ? "1" : "0") : "") << ','
      << (rel.violation ? 1 : 0) << '\n';
  }
  return s.str();
}

inline int cmd_search(SearchArgs const& a, std::ostream& out,
                      std::ostream& err) {
  auto const p = detail::load_presentation_file(a.presentation);
  SearchOptions o;
  o.bounds = {a.max_width, a.max_g, a.max_h};
  o.method = parse_search_method(a.method);
  if (a.beta) {
    o.beta = parse_rational(*a.beta);
  }
  o.threads = a.threads;
  o.guard_cap = detail::guard_cap_from_env(o.guard_cap);
  auto const report = search_tight_relations(p, o);

  // Thread count is left out so output does not depend on it.
  Json params{{"presentation", a.presentation},
              {"max_width", a.max_width},
              {"max_g", a.max_g},
              {"max_h", a.max_h},
              {"method", report.method}};
  if (report.beta) {
    params["beta"] = to_string(*report.beta);
  }
  Json const meta = detail::meta("search", params);

  std::string text;
  if (a.format == "csv") {
    text = search_csv(report, meta);
  } else {
    Json j;
    j["meta"] = meta;
    j["presentation"] = {{"generators", report.generators},
                         {"relators", report.relator_count},
                         {"min_length", report.min_length},
                         {"c_prime_one_sixth", report.c_prime_one_sixth}};
    j["candidates"] = report.candidates;
    j["classes_tested"] = report.classes_tested;
    j["violations"] = report.violations;
    j["liniso_failures"] = report.liniso_failures;
    Json rels = Json::array();
    for (auto const& rel : report.relations) {
      Json hs = Json::array();
      for (auto const& h : rel.word.hs) {
        hs.push_back(format_word(h));
      }
      Json e{{"g", format_word(rel.word.g)},
             {"hs", std::move(hs)},
             {"width", rel.word.width()},
             {"h_sum", rel.word.h_sum()},
             {"boundary", format_word(rel.boundary)},
             {"trivial", true},
             {"cost", rel.cost},
             {"filling", detail::filling_json(rel.filling)},
             {"cprime_bound", to_string(rel.cprime)},
             {"cprime_ok", rel.cprime_ok}};
      if (rel.liniso) {
        e["liniso_bound"] = to_string(*rel.liniso);
        e["liniso_ok"] = *rel.liniso_ok;
      }
      e["violation"] = rel.violation;
      rels.push_back(std::move(e));
    }
    j["relations"] = std::move(rels);
    if (a.timing) {
      j["elapsed_seconds"] = report.elapsed_seconds;
    }
    text = detail::dump(j);
  }
  detail::emit(text, a.out, out);
  if (report.violations > 0) {
    err << "VIOLATION: " << report.violations
        << " relation(s) on a C'(1/6) presentation have sum|h_i| <= "
           "cprime_bound\n";
  }
  return kOk;
}

struct BoundsArgs {
  std::string d;
  std::string eps;
  std::size_t L = 0;
  std::size_t n = 1;
  std::size_t g_len = 1;
  std::optional<std::size_t> h_sum;
  std::optional<std::string> beta;
  std::optional<std::size_t> L_min;
};

inline int cmd_bounds(BoundsArgs const& a, std::ostream& out) {
  Rational const d = parse_rational(a.d);
  Rational const eps = parse_rational(a.eps);
  Rational const beta = a.beta ? parse_rational(*a.beta) : 1 - 2 * d - eps;
  std::size_t const l_min = a.L_min.value_or(a.L);
  std::size_t const h_sum = a.h_sum.value_or(0);
  Json params{{"d", to_string(d)},  {"eps", to_string(eps)},
              {"L", a.L},           {"n", a.n},
              {"g_len", a.g_len},   {"h_sum", h_sum},
              {"beta", to_string(beta)}, {"L_min", l_min}};
  Json j;
  j["meta"] = detail::meta("bounds", params);
  j["main_bound"] = to_string(main_bound(d, eps, a.L, a.n, a.g_len));
  j["liniso_bound"] = to_string(liniso_bound(beta, a.L, a.n, a.g_len));
  j["cprime_bound"] = to_string(cprime_bound(l_min, a.n, a.g_len));
  j["cprime_bound_two_face"] =
      to_string(cprime_bound_two_face(l_min, a.n, a.g_len));
  j["cprime_g_lower_bound"] =
      to_string(cprime_g_lower_bound(l_min, a.n, h_sum));
  auto const sw = short_witness_thresholds(d, eps, a.n, a.L);
  j["short_witness"] = {{"g_max", to_string(sw.g_max)},
                        {"h_sum_max", to_string(sw.h_sum_max)}};
  j["width_tradeoff"] =
      to_string(width_tradeoff(d, eps, a.L, a.g_len, h_sum));
  out << detail::dump(j);
  return kOk;
}

struct EnumerateArgs {
  int m = 2;
  std::size_t n = 1;
  bool cyclic = false;
  std::string format = "json";
};

// CSV columns: index,word.
inline int cmd_enumerate(EnumerateArgs const& a, std::ostream& out) {
  auto const words = a.cyclic ? enumerate_cyclically_reduced(a.m, a.n)
                              : enumerate_reduced(a.m, a.n);
  Json const meta = detail::meta(
      "enumerate", {{"m", a.m}, {"n", a.n}, {"cyclic", a.cyclic}});
  if (a.format == "csv") {
    out << "# " << meta.dump() << "\nindex,word\n";
    for (std::size_t i = 0; i < words.size(); ++i) {
      out << i << ',' << format_word(words[i]) << '\n';
    }
    return kOk;
  }
  Json j;
  j["meta"] = meta;
  j["count"] = words.size();
  Json list = Json::array();
  for (auto const& w : words) {
    list.push_back(format_word(w));
  }
  j["words"] = std::move(list);
  out << detail::dump(j);
  return kOk;
}

inline int run(std::vector<std::string> const& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"vkd: small-cancellation and generalized torsion toolkit"};
  app.name("vkd");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  SampleArgs sample;
  auto* c_sample = app.add_subcommand(
      "sample", "Sample a presentation from the density model");
  c_sample->add_option("--m", sample.m, "Generators")->required();
  c_sample->add_option("--d", sample.d, "Density as p/q")->required();
  c_sample->add_option("--L", sample.L, "Relator length")->required();
  c_sample->add_option("--seed", sample.seed, "RNG seed (default 0)");
  c_sample->add_option("--out", sample.out, "Output file (default stdout)");

  CheckArgs check;
  auto* c_check = app.add_subcommand("check-smallcancel",
                                     "Check the C'(lambda) condition");
  c_check->add_option("--presentation", check.presentation)->required();
  c_check->add_option("--lambda", check.lambda, "lambda as p/q (default 1/6)");

  DehnArgs dehn;
  auto* c_dehn = app.add_subcommand("dehn", "Run Dehn's algorithm on a word");
  c_dehn->add_option("--presentation", dehn.presentation)->required();
  c_dehn->add_option("--word", dehn.word)->required();

  FillingArgs filling;
  auto* c_filling = app.add_subcommand(
      "filling", "Search for a bounded filling of a word");
  c_filling->add_option("--presentation", filling.presentation)->required();
  c_filling->add_option("--word", filling.word)->required();
  c_filling->add_option("--max-area", filling.max_area);
  c_filling->add_option("--max-conj", filling.max_conj);

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify-diagram",
                                      "Validate a van Kampen diagram file");
  c_verify->add_option("--diagram", verify.diagram)->required();
  c_verify->add_option("--presentation", verify.presentation)->required();
  c_verify->add_option("--word", verify.word, "Expected boundary word");
  c_verify->add_option("--g", verify.g, "Tight word g for block counts");
  c_verify->add_option("--hs", verify.hs, "Comma-separated h_i")
      ->needs(c_verify->get_option("--g"));

  SearchArgs search;
  auto* c_search = app.add_subcommand("search",
                                      "Search for tight relations");
  c_search->add_option("--presentation", search.presentation)->required();
  c_search->add_option("--max-width", search.max_width)->required();
  c_search->add_option("--max-g", search.max_g)->required();
  c_search->add_option("--max-h", search.max_h)->required();
  c_search->add_option("--method", search.method, "dehn | filling:A,C");
  c_search->add_option("--format", search.format)
      ->check(CLI::IsMember({"json", "csv"}));
  c_search->add_option("--threads", search.threads)
      ->check(CLI::Range(1u, 256u));
  c_search->add_option("--beta", search.beta,
                       "Isoperimetric constant p/q for liniso_bound");
  c_search->add_flag("--timing", search.timing, "Include wall-clock time");
  c_search->add_option("--out", search.out);

  BoundsArgs bounds;
  auto* c_bounds = app.add_subcommand("bounds", "Evaluate the bounds");
  c_bounds->add_option("--d", bounds.d)->required();
  c_bounds->add_option("--eps", bounds.eps)->required();
  c_bounds->add_option("--L", bounds.L)->required();
  c_bounds->add_option("--n", bounds.n)->required();
  c_bounds->add_option("--g-len", bounds.g_len)->required();
  c_bounds->add_option("--h-sum", bounds.h_sum);
  c_bounds->add_option("--beta", bounds.beta,
                       "Default 1-2d-eps");
  c_bounds->add_option("--L-min", bounds.L_min, "Default L");

  EnumerateArgs enumerate;
  auto* c_enum = app.add_subcommand("enumerate",
                                    "List reduced words of one length");
  c_enum->add_option("--m", enumerate.m)->required();
  c_enum->add_option("--n", enumerate.n)->required();
  c_enum->add_flag("--cyclic", enumerate.cyclic,
                   "Cyclically reduced words only");
  c_enum->add_option("--format", enumerate.format)
      ->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return kOk;
  } catch (CLI::CallForVersion const&) {
    out << kVersion << '\n';
    return kOk;
  } catch (CLI::ParseError const& e) {
    err << "vkd: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (c_sample->parsed()) {
      return cmd_sample(sample, out);
    }
    if (c_check->parsed()) {
      return cmd_check(check, out);
    }
    if (c_dehn->parsed()) {
      return cmd_dehn(dehn, out);
    }
    if (c_filling->parsed()) {
      return cmd_filling(filling, out);
    }
    if (c_verify->parsed()) {
      return cmd_verify(verify, out);
    }
    if (c_search->parsed()) {
      return cmd_search(search, out, err);
    }
    if (c_bounds->parsed()) {
      return cmd_bounds(bounds, out);
    }
    if (c_enum->parsed()) {
      return cmd_enumerate(enumerate, out);
    }
  } catch (ParseError const& e) {
    err << "vkd: input error: " << e.what() << '\n';
    return kUsage;
  } catch (DomainError const& e) {
    err << "vkd: invalid parameter: " << e.what() << '\n';
    return kUsage;
  } catch (PreconditionError const& e) {
    err << "vkd: precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (TightenError const& e) {
    err << "vkd: precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (GuardCapExceeded const& e) {
    err << "vkd: guard cap exceeded: " << e.what() << '\n';
    return kGuardCap;
  }
  return kUsage;
}

}  // namespace vkd::cli
