#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "suites.hpp"

using qloop::cli::Config;
using qloop::cli::json;

namespace {

// U+2212 shows up when values are pasted from typeset text.
std::string ascii_minus(std::string s) {
  const std::string m = "\xE2\x88\x92";
  for (size_t p; (p = s.find(m)) != std::string::npos;) s.replace(p, m.size(), "-");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for quantum loop superalgebra modules"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::string config_path;
  std::map<std::string, CLI::Option*> opt;
  opt["M"] = app.add_option("--M", cfg.M, "first signature index");
  opt["N"] = app.add_option("--N", cfg.N, "second signature index");
  opt["a"] = app.add_option("--a", cfg.a, "evaluation point (expression in q, a, b, w; default: the indeterminate a)");
  opt["b"] = app.add_option("--b", cfg.b, "second evaluation point for tensor suites");
  opt["window"] = app.add_option("--window", cfg.window, "loop index window |n| <= window");
  opt["order"] = app.add_option("--order", cfg.order, "series truncation order");
  opt["degree-bound"] = app.add_option("--degree-bound", cfg.degree_bound, "degree bound for annihilators and random triples");
  opt["height"] = app.add_option("--height", cfg.height, "maximal weight height for pbw-rank");
  opt["nmax"] = app.add_option("--nmax", cfg.nmax, "largest n for appendix-a");
  opt["count"] = app.add_option("--count", cfg.count, "number of random triples for monoid");
  opt["seed"] = app.add_option("--seed", cfg.seed, "seed for randomized suites");
  opt["Q"] = app.add_option("--Q", cfg.Q, "comma separated coefficients of Q for weyl-slice");
  opt["Pprev"] = app.add_option("--Pprev", cfg.Pprev, "comma separated coefficients of P_{M-1} for weyl-slice");
  opt["out"] = app.add_option("--out", cfg.out, "write the JSON report here instead of stdout");
  app.add_option("--config", config_path, "JSON file whose keys mirror the flags")->check(CLI::ExistingFile);

  std::string suite;
  for (const auto& name : qloop::cli::suite_names())
    app.add_subcommand(name, "run the " + name + " suite")->callback([&suite, name] { suite = name; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      json j = json::parse(in);
      for (auto it = j.begin(); it != j.end(); ++it) {
        auto o = opt.find(it.key());
        if (o == opt.end()) throw qloop::cli::ConfigError("unknown config key " + it.key());
        if (o->second->count()) continue;  // command line wins
        std::string v = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        o->second->clear();
        o->second->add_result(v);
        o->second->run_callback();
      }
    }
    cfg.a = ascii_minus(cfg.a);
    cfg.b = ascii_minus(cfg.b);
    cfg.Q = ascii_minus(cfg.Q);
    cfg.Pprev = ascii_minus(cfg.Pprev);

    auto checks = qloop::cli::run_suite(suite, cfg);
    json rep = qloop::cli::report(suite, cfg, checks);
    if (cfg.out.empty()) {
      std::cout << rep.dump(2) << "\n";
    } else {
      std::ofstream o(cfg.out);
      o << rep.dump(2) << "\n";
    }
    for (const auto& c : checks)
      if (!c.pass) return 1;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
