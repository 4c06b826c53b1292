#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>

#include "dtwc/cli.hpp"
#include "dtwc/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact wall-crossing and Laurent re-expansion toolkit"};
  std::string input = "-", format = "json", window, seed;
  app.add_option("-i,--input", input, "problem document (JSON), '-' for stdin");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--window", window, "window bound override, exact rational");
  app.add_option("--seed", seed, "seed for the selfcheck property suite");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  dtwc::cli::Options opt;
  opt.table = format == "table";
  std::string text;
  if (input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(input);
    if (!in) {
      std::cerr << "dtwc: cannot open " << input << "\n";
      return 2;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
    opt.base_dir = std::filesystem::path(input).parent_path().string();
    if (opt.base_dir.empty()) opt.base_dir = ".";
  }
  try {
    if (!window.empty()) opt.window = dtwc::parse_rational(window, "--window");
    if (!seed.empty()) {
      std::size_t used = 0;
      unsigned long long s = std::stoull(seed, &used);
      if (used != seed.size()) throw std::invalid_argument(seed);
      opt.seed = s;
    }
  } catch (const dtwc::Error& e) {
    std::cerr << "dtwc: " << e.what() << " (" << e.path() << ")\n";
    return 2;
  } catch (const std::exception&) {
    std::cerr << "dtwc: --seed must be a nonnegative integer\n";
    return 2;
  }

  dtwc::cli::Outcome out = dtwc::cli::run_text(text, opt);
  std::cout << dtwc::cli::render(out, opt.table);
  return out.exit_code;
}
