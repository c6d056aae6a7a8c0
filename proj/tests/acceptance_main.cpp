// Acceptance runner: executes the toolkit's acceptance criteria and prints
// one PASS/FAIL line per criterion. Exit code 0 iff every selected criterion
// passes.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "persim/acceptance.hpp"

int main(int argc, char** argv) {
  persim::AcceptanceOptions opts;

  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value for %s\n", arg.c_str());
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--criteria") {
      const std::string list = next();
      std::size_t pos = 0;
      while (pos < list.size()) {
        const std::size_t comma = list.find(',', pos);
        opts.only.push_back(std::stoi(list.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    } else if (arg == "--cli-path") {
      opts.cli_path = next();
    } else if (arg == "--seed") {
      opts.seed = std::strtoull(next(), nullptr, 0);
    } else if (arg == "--workers") {
      opts.workers = std::atoi(next());
    } else if (arg == "--out") {
      opts.out_dir = next();
    } else if (arg == "--full-determinism") {
      opts.full_determinism = true;
    } else {
      std::fprintf(stderr, "unknown argument %s\n", arg.c_str());
      return 2;
    }
  }

  const auto results = persim::run_acceptance(opts);
  bool all_pass = true;
  for (const auto& r : results) {
    std::puts(persim::format_criterion_line(r).c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}
