// gwwel: exact Welschinger invariants of plane curves over Q and F_p.
//
// Thin shell over the shared library: each subcommand assembles a JSON run
// spec, hands it to gww_run_json, prints the report, and exits with the code
// the library returns (0 ok, 1 verification red, 2 not generic, 3 input
// error, 4 internal).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gww.h"
#include <nlohmann/json.hpp>

using Json = nlohmann::ordered_json;

namespace {

int run_and_print(const Json& spec, const std::string& out_path) {
  const std::string text = spec.dump();
  gww_result* res = nullptr;
  const int code = gww_run_json(text.c_str(), &res);
  if (!res) {
    std::fprintf(stderr, "gwwel: %s\n", gww_last_error());
    return code == 0 ? 4 : code;
  }
  const std::string report = gww_result_json(res);
  gww_result_free(res);
  if (out_path.empty()) {
    std::fputs(report.c_str(), stdout);
    std::fputc('\n', stdout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::fprintf(stderr, "gwwel: cannot write '%s'\n", out_path.c_str());
      return 3;
    }
    f << report << '\n';
  }
  return code;
}

bool load_points(const std::string& path, Json& into, const char* key) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "gwwel: cannot read '%s'\n", path.c_str());
    return false;
  }
  Json doc = Json::parse(f, nullptr, false);
  if (doc.is_object() && doc.contains("points")) doc = doc["points"];
  if (!doc.is_array()) {
    std::fprintf(stderr, "gwwel: '%s' must hold a JSON array of points\n",
                 path.c_str());
    return false;
  }
  into[key] = std::move(doc);
  return true;
}

struct Common {
  std::string field = "Q";
  std::string out;
  std::uint64_t seed = 0;
  int threads = 0;
  int verbosity = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--field", c.field, "Base field: Q or Fp:<p>");
  cmd->add_option("--out", c.out, "Write the report here instead of stdout");
  cmd->add_option("--seed", c.seed, "Seed for every randomized choice");
  cmd->add_option("--threads", c.threads,
                  "Worker cap (also capped by GW_WEL_THREADS)");
  cmd->add_flag("-v,--verbose", c.verbosity,
                "Include exact per-node data in count reports");
}

void put_common(Json& spec, const Common& c) {
  spec["field"] = c.field;
  spec["seed"] = c.seed;
  if (c.threads > 0) spec["threads"] = c.threads;
  if (c.verbosity > 0) spec["verbosity"] = std::min(c.verbosity, 2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Welschinger invariants of nodal plane curves"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", std::string(gww_version()));

  std::string top_verify;
  app.add_option("--verify", top_verify,
                 "Run a verification suite: cusp, tacnode, triple, residues, all");

  // count / oracle
  struct {
    Common common;
    int degree = 3;
    std::string points, type;
    long bound = 20;
    bool oracle = false;
  } cnt, orc;
  CLI::App* c_count = app.add_subcommand("count", "Count through a point configuration");
  CLI::App* c_oracle = app.add_subcommand(
      "oracle", "Count, then cross-check the signature against real roots");
  for (auto [cmd, o] : {std::pair{c_count, &cnt}, std::pair{c_oracle, &orc}}) {
    add_common(cmd, o->common);
    cmd->add_option("--degree", o->degree, "Curve degree (1, 2 or 3)");
    cmd->add_option("--points", o->points, "JSON file with the configuration");
    cmd->add_option("--type", o->type, "Orbit type, e.g. 8x1 or 6x1,1x2");
    cmd->add_option("--bound", o->bound, "Coordinate bound for generated points");
  }
  c_count->add_flag("--oracle", cnt.oracle, "Also run the signature oracle");

  // curve
  struct {
    Common common;
    std::string file, form;
    bool any_nodes = false, integral = false;
  } crv;
  CLI::App* c_curve =
      app.add_subcommand("curve", "Classify a curve's singular points and take its class");
  add_common(c_curve, crv.common);
  c_curve->add_option("--file", crv.file, "Text file holding the form in X0, X1, X2");
  c_curve->add_option("--form", crv.form, "The form itself, e.g. X1^2*X2 - X0^3 - X0^2*X2");
  c_curve->add_flag("--allow-any-node-count", crv.any_nodes,
                    "Do not require the nodal-degree count of a rational curve");
  c_curve->add_flag("--assume-integral", crv.integral,
                    "Skip the irreducibility check");

  // move-test
  struct {
    Common common;
    int degree = 3;
    std::string points, points_b, type;
    std::uint64_t seed_b = 0;
    long bound = 20;
  } mv;
  CLI::App* c_move = app.add_subcommand(
      "move-test", "Compare the invariant across two configurations");
  add_common(c_move, mv.common);
  c_move->add_option("--degree", mv.degree, "Curve degree (1, 2 or 3)");
  c_move->add_option("--points", mv.points, "JSON file for the first configuration");
  c_move->add_option("--points-b", mv.points_b, "JSON file for the second configuration");
  c_move->add_option("--type", mv.type, "Orbit type for generated configurations");
  c_move->add_option("--seed-b", mv.seed_b, "Seed for the second configuration");
  c_move->add_option("--bound", mv.bound, "Coordinate bound for generated points");

  // recursion
  struct {
    std::string out;
    int max = 5;
  } rec;
  CLI::App* c_rec = app.add_subcommand("recursion", "Rational-curve counts N_d");
  c_rec->add_option("--max", rec.max, "Largest degree to tabulate (up to 12)");
  c_rec->add_option("--out", rec.out, "Write the report here instead of stdout");

  // verify
  struct {
    Common common;
    std::string suite = "all";
    std::vector<std::string> trials;
  } ver;
  CLI::App* c_verify =
      app.add_subcommand("verify", "Local-model and residue verification suites");
  add_common(c_verify, ver.common);
  c_verify->add_option("--suite", ver.suite,
                       "cusp, tacnode, triple, residues, or all");
  c_verify->add_option("--trials", ver.trials,
                       "Override a suite's trial count, e.g. --trials cusp=500");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  Json spec;
  if (c_count->parsed() || c_oracle->parsed()) {
    const auto& o = c_count->parsed() ? cnt : orc;
    spec["command"] = c_count->parsed() ? "count" : "oracle";
    put_common(spec, o.common);
    spec["degree"] = o.degree;
    if (!o.type.empty()) spec["type"] = o.type;
    spec["bound"] = o.bound;
    if (o.oracle) spec["oracle"] = true;
    if (!o.points.empty() && !load_points(o.points, spec, "points")) return 3;
    return run_and_print(spec, o.common.out);
  }
  if (c_curve->parsed()) {
    spec["command"] = "curve";
    put_common(spec, crv.common);
    std::string form = crv.form;
    if (form.empty()) {
      if (crv.file.empty()) {
        std::fprintf(stderr, "gwwel: curve needs --form or --file\n");
        return 3;
      }
      std::ifstream f(crv.file, std::ios::binary);
      if (!f) {
        std::fprintf(stderr, "gwwel: cannot read '%s'\n", crv.file.c_str());
        return 3;
      }
      std::ostringstream ss;
      ss << f.rdbuf();
      form = ss.str();
      while (!form.empty() && (form.back() == '\n' || form.back() == '\r'))
        form.pop_back();
    }
    spec["curve"] = form;
    if (crv.any_nodes) spec["allow_any_node_count"] = true;
    if (crv.integral) spec["assume_integral"] = true;
    return run_and_print(spec, crv.common.out);
  }
  if (c_move->parsed()) {
    spec["command"] = "move-test";
    put_common(spec, mv.common);
    spec["degree"] = mv.degree;
    if (!mv.type.empty()) spec["type"] = mv.type;
    spec["bound"] = mv.bound;
    if (c_move->count("--seed-b") > 0) spec["seed_b"] = mv.seed_b;
    if (!mv.points.empty() && !load_points(mv.points, spec, "points")) return 3;
    if (!mv.points_b.empty() && !load_points(mv.points_b, spec, "points_b"))
      return 3;
    return run_and_print(spec, mv.common.out);
  }
  if (c_rec->parsed()) {
    spec["command"] = "recursion";
    spec["max"] = rec.max;
    return run_and_print(spec, rec.out);
  }
  if (c_verify->parsed() || !top_verify.empty()) {
    spec["command"] = "verify";
    if (c_verify->parsed()) {
      put_common(spec, ver.common);
      spec["suite"] = ver.suite;
      if (!ver.trials.empty()) {
        Json t;
        for (const auto& item : ver.trials) {
          const auto eq = item.find('=');
          if (eq == std::string::npos) {
            std::fprintf(stderr, "gwwel: --trials wants suite=count, got '%s'\n",
                         item.c_str());
            return 3;
          }
          try {
            t[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
          } catch (const std::exception&) {
            std::fprintf(stderr, "gwwel: bad trial count in '%s'\n", item.c_str());
            return 3;
          }
        }
        spec["trials"] = std::move(t);
      }
      return run_and_print(spec, ver.common.out);
    }
    spec["suite"] = top_verify;
    return run_and_print(spec, "");
  }

  std::fputs(app.help().c_str(), stderr);
  return 3;
}
