#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sgen2/error.hpp"
#include "sgen2/pipeline.hpp"

using namespace sgen2;

int main(int argc, char** argv) {
  CLI::App app{"Generators of finite-index subgroups of SL_2 over S-integers"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  std::string config_path, out_path, N_arg;
  long h = 0;
  bool timings = false, serial = false;
  for (const char* name : {"analyze", "alpha", "generate", "verify"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " pipeline");
    sub->add_option("--config", config_path, "instance configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--h", h, "index parameter h >= 1 (overrides the config)");
    sub->add_option("--N", N_arg, "ladder exponent: a positive integer or 'search'");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_flag("--timings", timings, "include wall-clock timings (reports are then not reproducible)");
    sub->add_flag("--serial", serial, "run the mod-P checks serially");
  }
  auto* ex = app.add_subcommand("examples", "reproduce the two worked examples over Q(i)");
  ex->add_option("--out", out_path, "write the report here instead of stdout");
  ex->add_flag("--timings", timings, "include wall-clock timings");
  CLI11_PARSE(app, argc, argv);

  const std::string cmd_name = app.get_subcommands().front()->get_name();
  RunResult result;
  try {
    Command cmd = parse_command(cmd_name);
    InstanceConfig config;
    if (cmd != Command::Examples) {
      std::ifstream in(config_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw Error(Errc::ConfigInvalid, std::string("cannot parse ") + config_path + ": " + e.what());
      }
      if (h != 0) j["h"] = h;
      if (!N_arg.empty()) {
        if (N_arg == "search") {
          j["N"] = "search";
        } else {
          try {
            j["N"] = std::stol(N_arg);
          } catch (const std::exception&) {
            throw Error(Errc::ConfigInvalid, "--N expects an integer or 'search'");
          }
        }
      }
      config = parse_config(j);
    }
    result = run(cmd, config, {timings, !serial});
  } catch (const Error& e) {
    result.report = {{"schema", 1}, {"command", cmd_name}, {"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
    result.exit_code = exit_code_for(e.code());
  }
  const std::string text = result.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out_path) << text;
  }
  if (result.report.contains("error")) std::cerr << result.report["error"]["message"].get<std::string>() << "\n";
  return result.exit_code;
}
