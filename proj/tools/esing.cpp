// Command-line front end: esing <command> <problem-file> [flags]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "esing/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw esing::Error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of E-function vectors and their linear differential systems"};
  std::string command, file, out_path, point, a_list;
  esing::Flags flags;
  std::vector<std::string> commands = esing::command_names();
  commands.push_back("run");
  app.add_option("command", command, "desing, relations, apparent, sympow, minop, growth, series, check or run")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("file", file, "problem file")->required();
  app.add_option("--order,-K", flags.order, "series truncation order")->capture_default_str();
  app.add_option("--degree,-d", flags.degree, "relation degree bound")->capture_default_str();
  app.add_option("--point,--xi", point, "evaluation point p/q");
  app.add_option("--N", flags.N, "symmetric power")->capture_default_str();
  app.add_option("--a", a_list, "combination coefficients, ';' separated");
  app.add_option("--out,-o", out_path, "write the report here instead of stdout");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!point.empty()) flags.point = esing::parse_rat(point);
    if (!a_list.empty()) flags.a = esing::parse_poly_list(a_list, 1);
    const auto pf = esing::parse_problem(read_file(file));
    esing::Report rep;
    if (command == "run") {
      rep = esing::run_tasks(pf, flags);
      for (const auto& r : rep) std::cerr << esing::summarize(r) << "\n";
    } else {
      rep = esing::run_command(pf, command, flags);
      std::cerr << esing::summarize(rep) << "\n";
    }
    const std::string text = rep.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw esing::Error("cannot write " + out_path);
      out << text;
    }
  } catch (const esing::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
