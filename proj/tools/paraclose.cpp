// paraclose <command> --file F [--k-max N] [--e-max N] [--deg-bound N] [--json OUT] [--preset NAME] [--seed S]

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "paraclose/cli.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw paraclose::ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const paraclose::RunReport& report, const std::string& json_out) {
  std::cout << "verdict: " << report.verdict() << "\n";
  for (const auto& line : report.summary) std::cout << line << "\n";
  if (json_out.empty()) return;
  std::string text = report.body.dump(2) + "\n";
  if (json_out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(json_out, std::ios::binary);
  if (!out) throw paraclose::ParseError("cannot write '" + json_out + "'", 0, 0);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paraclose: certificates for paraclass vanishing, tight closure and integral closure checks"};
  std::string command, file, json_out, preset;
  paraclose::CommandOptions opts;
  app.add_option("command", command, "membership | paraclass | regular-cert | tight | bskoda | verify | identity")
      ->required()
      ->check(CLI::IsMember(paraclose::command_names()));
  app.add_option("--file", file, "problem file (certificate JSON for verify)");
  app.add_option("--preset", preset, "roberts [p] | toric n k | fermat-quadric i j k [p] | bs-monomial [a] [w] [p]");
  app.add_option("--k-max", opts.k_max, "largest k tried by the paraclass search");
  app.add_option("--e-max", opts.e_max, "largest Frobenius exponent e");
  app.add_option("--deg-bound", opts.degree_bound, "degree bound for multiplier search and monomial sweeps");
  app.add_option("--json", json_out, "write the JSON report here ('-' for stdout)");
  app.add_option("--seed", opts.seed, "seed recorded in the report");
  CLI11_PARSE(app, argc, argv);

  try {
    paraclose::RunReport report;
    if (command == "verify") {
      if (file.empty()) throw paraclose::ParseError("verify needs --file with a certificate document", 0, 0);
      report = paraclose::cmd_verify(slurp(file));
    } else {
      if (file.empty() == preset.empty()) throw paraclose::ParseError("give exactly one of --file and --preset", 0, 0);
      std::string text = preset.empty() ? slurp(file) : paraclose::preset_text(preset);
      report = paraclose::run_command(command, paraclose::ProblemFile::parse(text), opts);
    }
    emit(report, json_out);
    return report.exit_code;
  } catch (const paraclose::ParseError& e) {
    std::cerr << (file.empty() ? std::string("input") : file);
    if (e.line() > 0) std::cerr << ":" << e.line() << ":" << e.column();
    std::cerr << ": error: " << e.message() << "\n";
    return paraclose::kExitInputError;
  } catch (const paraclose::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return paraclose::kExitInternal;
  } catch (const paraclose::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return paraclose::kExitInputError;
  }
}
