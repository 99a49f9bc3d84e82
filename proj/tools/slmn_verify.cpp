#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "slmn/suites.hpp"

namespace {

std::pair<int, int> parse_case(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw slmn::ConfigError("bad --case '" + s + "' (expected m,n)");
  try {
    int m = std::stoi(s.substr(0, comma));
    int n = std::stoi(s.substr(comma + 1));
    return {m, n};
  } catch (const std::exception&) {
    throw slmn::ConfigError("bad --case '" + s + "' (expected m,n)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "slmn-verify: exact verification suites for sl(m|n) tensor decompositions,\n"
      "the quadratic ideal family and its critical parameter, and the polynomial\n"
      "differential-operator realization."};

  std::vector<std::string> case_strs;
  int m = 0, n = 0;
  std::vector<std::string> suites;
  std::string format = "text";
  std::string out;
  int jobs = 1;
  long mem_cap_mb = 2048;
  bool slow = false;
  bool timings = false;

  app.add_option("--case", case_strs, "case as m,n (repeatable)");
  app.add_option("--m", m, "single-case m (use with --n)");
  app.add_option("--n", n, "single-case n (use with --m)");
  app.add_option("--suite", suites,
                 "suite to run: prelim, decomposition, hwv, joseph, realization, beta3 "
                 "(repeatable; default: all but beta3)");
  app.add_option("--format", format, "output format: json or text (default text)");
  app.add_option("--out", out, "write the report to this path instead of stdout");
  app.add_option("--jobs", jobs, "worker count (default 1; output is identical for any value)");
  app.add_option("--mem-cap-mb", mem_cap_mb, "memory cap for the beta3 suite (default 2048)");
  app.add_flag("--slow", slow, "enable the slow beta3 suite");
  app.add_flag("--timings", timings,
               "include wall times in the report (off by default so reports are byte-identical)");

  CLI11_PARSE(app, argc, argv);

  try {
    slmn::SuiteConfig cfg;
    for (const auto& s : case_strs) cfg.cases.push_back(parse_case(s));
    if (m != 0 || n != 0) {
      if (m == 0 || n == 0) throw slmn::ConfigError("--m and --n must be given together");
      cfg.cases.push_back({m, n});
    }
    cfg.suites = suites;
    cfg.format = format;
    cfg.out = out;
    cfg.jobs = jobs;
    cfg.mem_cap_mb = mem_cap_mb;
    cfg.slow = slow;
    cfg.timings = timings;

    slmn::ReportDocument doc = slmn::run_suite(cfg);
    std::string text = slmn::emit_report(doc, cfg.format);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw slmn::ConfigError("cannot open output path '" + cfg.out + "'");
      f << text;
    }
    return slmn::exit_code(doc);
  } catch (const slmn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
