#include <iostream>

#include "CLI11.hpp"
#include "relhom/cli/run.hpp"
#include "relhom/error.hpp"

int main(int argc, char** argv) {
  using namespace relhom::cli;
  CLI::App app{"Relative homological algebra over finite-dimensional algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Options opts;
  std::string spec_path, format = "json";
  long max_degree = -1, depth = -1;
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("specfile", spec_path, "spec document (JSON)")->required();
    sub->add_option("--tau", opts.tau, "torsion theory name");
    sub->add_option("--module", opts.module, "module or complex name");
    sub->add_option("--max-degree", max_degree, "resolution cap");
    sub->add_option("--depth", depth, "replacement and tower depth");
    sub->add_option("--suite", opts.suite, "check suite")->check(CLI::IsMember(suites()));
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--timing", opts.timing, "include wall times");
    sub->callback([&opts, name] { opts.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opts.json = format == "json";
  if (max_degree >= 0) opts.max_degree = max_degree;
  if (depth >= 0) opts.depth = depth;

  try {
    const LoadedSpec spec = load(parse_spec(spec_path));
    const Outcome out = run(spec, opts);
    std::cout << render(out, opts);
    return exit_status(out);
  } catch (const relhom::Error& e) {
    std::cerr << "relhom: " << e.what() << "\n";
    return 2;
  }
}
