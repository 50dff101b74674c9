// pdmodel: command-line front end for the Poincaré duality model construction.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdmodel/algebra_io.hpp"
#include "pdmodel/cohomology.hpp"
#include "pdmodel/corpus.hpp"
#include "pdmodel/errors.hpp"
#include "pdmodel/pipeline.hpp"

using namespace pdmodel;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kRejected = 2, kInternal = 3 };

struct Common {
  std::string input;
  std::string field;
  std::optional<int> n;
  std::string output;
  std::string format = "text";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("input", c.input, "algebra file (JSON), or corpus:<name>")->required();
  sub->add_option("--field", c.field, "read scalars in this field instead of the file's (Q or a prime)");
  sub->add_option("--n", c.n, "formal dimension (overrides the file)");
  sub->add_option("--output", c.output, "write the report here instead of standard output");
  sub->add_option("--format", c.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
}

AlgebraDocument load(const Common& c) {
  std::optional<Field> f;
  if (!c.field.empty()) f = parse_field(c.field);
  AlgebraDocument doc;
  if (c.input.rfind("corpus:", 0) == 0) {
    const CorpusEntry& e = corpus_entry(c.input.substr(7));
    doc = f ? parse_algebra(print_algebra(e.doc), f) : e.doc;
  } else {
    doc = read_algebra_file(c.input, f);
  }
  if (c.n && *c.n != doc.n) {
    doc.n = *c.n;
    doc.orientation.reset();  // a file orientation lives in the file's degree n
  }
  return doc;
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw ParseError(c.output + ": cannot write");
  out << text;
}

ordered_json report_json(const Report& r) {
  ordered_json out = ordered_json::array();
  for (const auto& d : r) out.push_back({{"check", d.check}, {"message", d.message}});
  return out;
}

ordered_json sparse_row(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.push_back(ordered_json::array({i, v[i].to_string()}));
  return out;
}

std::string case_name(SurgeryCase c) {
  switch (c) {
    case SurgeryCase::Skipped: return "skipped";
    case SurgeryCase::Exterior: return "exterior";
    case SurgeryCase::PrimePowers: return "prime-powers";
  }
  return "";
}

std::string dims_text(const std::vector<std::size_t>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

std::string render_rejection(const Common& c, const std::string& command, const std::string& what) {
  if (c.format == "structured")
    return ordered_json{{"command", command}, {"verdict", "rejected"}, {"reason", what}}.dump(1) + "\n";
  return command + ": rejected\n" + what + (what.empty() || what.back() == '\n' ? "" : "\n");
}

std::string render_run(const Common& c, const PipelineResult& r, const Report& hyp) {
  AlgebraDocument out_doc{r.output.algebra, r.n, r.output.eps};
  CohomologyRing h(r.input.alg());
  std::vector<std::size_t> betti;
  for (int i = 0; i <= r.n; ++i) betti.push_back(h.betti(i));

  if (c.format == "structured") {
    ordered_json j;
    j["command"] = "run";
    j["verdict"] = "ok";
    j["field"] = r.input.alg().field().name();
    j["n"] = r.n;
    j["route"] = r.formal_shortcut ? "formal" : "surgery";
    j["hypotheses"] = report_json(hyp);
    j["orientation"] = sparse_row(r.input.eps.eps);
    ordered_json stages = ordered_json::array();
    for (const auto& s : r.stages) {
      ordered_json gens = ordered_json::array();
      for (const auto& g : s.generators) gens.push_back({{"name", g.name}, {"degree", g.degree}});
      stages.push_back({{"k", s.data.k},
                        {"l", s.data.l()},
                        {"case", case_name(s.which)},
                        {"generators", gens},
                        {"half_acyclic", !s.confirmed.empty()},
                        {"confirmed", s.confirmed}});
    }
    j["stages"] = stages;
    j["input_dimensions"] = r.input.alg().dims();
    j["output_dimensions"] = r.output.alg().dims();
    j["betti"] = betti;
    j["quasi_isomorphism"] = r.composite ? ordered_json(true) : ordered_json("not emitted");
    j["confirmed"] = r.confirmed;
    if (!r.note.empty()) j["note"] = r.note;
    j["output"] = ordered_json::parse(print_algebra(out_doc));
    return j.dump(1) + "\n";
  }

  std::ostringstream s;
  s << "run: ok\n";
  s << "field " << r.input.alg().field().name() << ", n = " << r.n << ", route "
    << (r.formal_shortcut ? "formal" : "surgery") << "\n";
  s << "betti " << dims_text(betti) << "\n";
  s << "input dimensions  " << dims_text(r.input.alg().dims()) << "\n";
  for (const auto& st : r.stages) {
    s << "stage k=" << st.data.k << ": l=" << st.data.l() << ", " << case_name(st.which);
    for (const auto& g : st.generators) s << " " << g.name << "(" << g.degree << ")";
    s << "\n";
    for (const auto& line : st.confirmed) s << "  ok " << line << "\n";
  }
  s << "output dimensions " << dims_text(r.output.alg().dims()) << "\n";
  for (const auto& line : r.confirmed) s << "ok " << line << "\n";
  if (!r.note.empty()) s << "note: " << r.note << "\n";
  s << "output algebra:\n" << print_algebra(out_doc);
  return s.str();
}

int cmd_run(const Common& c, std::optional<int> max_degree, bool skip_checks) {
  AlgebraDocument doc = load(c);
  RunOptions opts;
  opts.orientation = doc.orientation;
  opts.max_degree = max_degree;
  opts.stage_checks = !skip_checks;
  Report hyp = check_hypotheses(*doc.algebra, doc.n);
  try {
    PipelineResult r = doc.n <= 6 ? formal_model(*doc.algebra, doc.n, opts) : run(*doc.algebra, doc.n, opts);
    emit(c, render_run(c, r, hyp));
    return kOk;
  } catch (const HypothesisError& e) {
    emit(c, render_rejection(c, "run", e.what()));
    return kRejected;
  } catch (const InternalError& e) {
    emit(c, render_rejection(c, "run", std::string("internal verification failure: ") + e.what()));
    return kInternal;
  }
}

int cmd_verify(const Common& c) {
  AlgebraDocument doc = load(c);
  const Cdga& a = *doc.algebra;
  std::string verdict;
  Report details;
  auto bad = validate(a);
  if (!bad.empty()) {
    verdict = "not a valid CDGA";
    for (const auto& v : bad) details.push_back({v.axiom, describe(v)});
  } else {
    Cdga full = truncate(a, std::max(a.top(), doc.n + 1) + 1);
    Report hpd = check_H_PD(cohomology(full), doc.n);
    if (a.dim(0) != 1) hpd.push_back({"connected", "A^0 is not one-dimensional"});
    if (!hpd.empty()) {
      verdict = "valid, H not PD";
      details = hpd;
    } else {
      Orientation eps = doc.orientation ? *doc.orientation : derive_orientation(full, doc.n);
      Report r = doc.n <= a.top() ? check_orientation(a, eps) : Report{{"orientation", "n lies above the stored range"}};
      if (r.empty()) r = is_pd_cdga(OrientedCdga{doc.algebra, eps});
      verdict = r.empty() ? "differential Poincaré duality algebra" : "valid, H PD, chain-level not PD";
      details = r;
    }
  }
  bool ok = verdict == "differential Poincaré duality algebra";
  if (c.format == "structured") {
    emit(c, ordered_json{{"command", "verify"}, {"classification", verdict}, {"diagnostics", report_json(details)}}.dump(1) + "\n");
  } else {
    std::string text = verdict + "\n";
    for (const auto& d : details) text += "  " + d.check + ": " + d.message + "\n";
    emit(c, text);
  }
  return ok ? kOk : kRejected;
}

int cmd_cohomology(const Common& c) {
  AlgebraDocument doc = load(c);
  const Cdga& a = *doc.algebra;
  auto bad = validate(a);
  if (!bad.empty()) {
    emit(c, render_rejection(c, "cohomology", "not a valid CDGA: " + describe(bad.front())));
    return kRejected;
  }
  Cdga full = truncate(a, a.top() + 1);
  CohomologyRing h(full);
  std::vector<std::size_t> betti;
  for (int i = 0; i <= a.top(); ++i) betti.push_back(h.betti(i));
  ordered_json products = ordered_json::array();
  std::string lines;
  for (int i = 1; i <= a.top(); ++i)
    for (int j = i; i + j <= a.top(); ++j)
      for (std::size_t x = 0; x < h.betti(i); ++x)
        for (std::size_t y = i == j ? x : 0; y < h.betti(j); ++y) {
          Vector v = h.product(i, x, j, y);
          if (is_zero(v)) continue;
          products.push_back({{"deg_a", i}, {"a", x}, {"deg_b", j}, {"b", y}, {"value", sparse_row(v)}});
          lines += "[" + std::to_string(i) + "." + std::to_string(x) + "] * [" + std::to_string(j) + "." +
                   std::to_string(y) + "] =";
          for (std::size_t k = 0; k < v.size(); ++k)
            if (!v[k].is_zero()) lines += " " + v[k].to_string() + "[" + std::to_string(i + j) + "." + std::to_string(k) + "]";
          lines += "\n";
        }
  if (c.format == "structured")
    emit(c, ordered_json{{"command", "cohomology"}, {"betti", betti}, {"products", products}}.dump(1) + "\n");
  else
    emit(c, "betti " + dims_text(betti) + "\n" + lines);
  return kOk;
}

int cmd_corpus(const std::string& name, bool list, const std::string& output) {
  std::string text;
  if (list || name.empty()) {
    for (const auto& e : corpus()) text += e.name + "\t" + e.summary + "\n";
  } else {
    text = print_algebra(corpus_entry(name).doc);
  }
  Common c;
  c.output = output;
  emit(c, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poincaré duality CDGA models by orphan surgery"};
  app.require_subcommand(1);

  Common run_c, verify_c, coh_c;
  std::optional<int> max_degree;
  bool skip_checks = false, verify_skip = false;
  auto* run = app.add_subcommand("run", "build a quasi-isomorphic Poincaré duality CDGA");
  add_common(run, run_c);
  run->add_option("--max-degree", max_degree, "working truncation degree (at least n+2)");
  run->add_flag("--skip-stage-checks", skip_checks, "skip per-stage verification (final checks still run)");

  auto* verify = app.add_subcommand("verify", "classify an algebra file");
  add_common(verify, verify_c);
  verify->add_flag("--skip-stage-checks", verify_skip, "not accepted by verify");

  auto* coh = app.add_subcommand("cohomology", "betti numbers and class products");
  add_common(coh, coh_c);

  std::string corpus_name, corpus_out;
  bool corpus_list = false;
  auto* corp = app.add_subcommand("corpus", "print a built-in instance");
  corp->add_option("name", corpus_name, "instance name");
  corp->add_flag("--list", corpus_list, "list instance names");
  corp->add_option("--output", corpus_out, "write here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(run_c, max_degree, skip_checks);
    if (*verify) {
      if (verify_skip) {
        std::cerr << "verify: --skip-stage-checks is not allowed\n";
        return kUsage;
      }
      return cmd_verify(verify_c);
    }
    if (*coh) return cmd_cohomology(coh_c);
    if (*corp) return cmd_corpus(corpus_name, corpus_list, corpus_out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const HypothesisError& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kRejected;
  } catch (const Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
