#include "phaseweb/cli.hpp"

#include <CLI11.hpp>

#include <memory>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "phaseweb/parser.hpp"
#include "phaseweb/reports.hpp"

namespace pw {

namespace {

struct Output {
  std::string path;  // empty = stdout
  std::ostream* fallback = nullptr;

  void write(const std::string& text) const {
    if (path.empty()) {
      *fallback << text;
      return;
    }
    std::ofstream file(path);
    if (!file) throw Error("cannot open output file: " + path);
    file << text;
  }

  void json(const Json& j) const { write(j.dump(2) + "\n"); }
};

int check_sign(int sign) {
  if (sign != 1 && sign != -1)
    throw CLI::ValidationError("--sig", "signature must be +1 or -1");
  return sign;
}

std::vector<Event> read_trace(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error("cannot open trace file: " + path);
  std::vector<Event> events;
  std::string line;
  int lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error("trace line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!record.contains("t") || !record.contains("sensor") ||
        !record.contains("value"))
      throw Error("trace line " + std::to_string(lineno) +
                  ": expected {\"t\", \"sensor\", \"value\"}");
    Event e;
    e.t = record["t"].get<double>();
    e.sensor = record["sensor"].get<std::string>();
    e.orientation = record["value"].get<int>();
    events.push_back(std::move(e));
  }
  return events;
}

std::set<std::string> split_names(const std::string& csv) {
  std::set<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Z3 Clifford algebra, chain complexes, co-exclusion "
               "discovery and the hierarchy tables"};
  app.require_subcommand(1);

  auto output = std::make_shared<Output>();
  output->fallback = &out;
  app.add_option("--out", output->path,
                 "write output to a file instead of stdout");

  // Deferred actions: CLI11 parses first, then exactly one of these runs.
  std::function<void()> action;

  // ---- algebra eval ------------------------------------------------------
  auto* algebra = app.add_subcommand("algebra", "evaluate an algebra expression");
  algebra->require_subcommand(1);
  auto* eval = algebra->add_subcommand("eval", "parse and evaluate");
  {
    auto expr = std::make_shared<std::string>();
    auto sig = std::make_shared<int>(1);
    eval->add_option("expr", *expr, "expression, e.g. \"(s1+s2)*s1s2\"")
        ->required();
    eval->add_option("--sig", *sig, "uniform basis square, +1 or -1");
    eval->callback([=, &action]() {
      action = [=]() {
        output->json(multivector_json(parse_expression(*expr, check_sign(*sig))));
      };
    });
  }

  // ---- boundary / cobound ------------------------------------------------
  auto* bound = app.add_subcommand("boundary", "boundary of an expression");
  {
    auto expr = std::make_shared<std::string>();
    auto sig = std::make_shared<int>(1);
    bound->add_option("expr", *expr, "expression")->required();
    bound->add_option("--sig", *sig, "signature used to evaluate products");
    bound->callback([=, &action]() {
      action = [=]() {
        output->json(
            multivector_json(boundary(parse_expression(*expr, check_sign(*sig)))));
      };
    });
  }

  auto* cobound = app.add_subcommand("cobound", "coboundary of an expression");
  {
    auto expr = std::make_shared<std::string>();
    auto sig = std::make_shared<int>(1);
    auto n = std::make_shared<int>(0);
    cobound->add_option("expr", *expr, "expression")->required();
    cobound->add_option("--n", *n, "universe size fixing the ambient basis")
        ->required();
    cobound->add_option("--sig", *sig, "signature used to evaluate products");
    cobound->callback([=, &action]() {
      action = [=]() {
        Multivector m = parse_expression(*expr, check_sign(*sig), *n);
        output->json(multivector_json(coboundary(m, *n)));
      };
    });
  }

  // ---- coex discover -----------------------------------------------------
  auto* coex = app.add_subcommand("coex", "event-buffer co-exclusion discovery");
  coex->require_subcommand(1);
  auto* discover = coex->add_subcommand("discover", "ingest a trace");
  {
    auto trace = std::make_shared<std::string>();
    auto window = std::make_shared<double>(0.0);
    auto arity = std::make_shared<int>(2);
    auto format = std::make_shared<std::string>("json");
    discover->add_option("--trace", *trace, "line-delimited JSON event trace")
        ->required();
    discover->add_option("--window", *window, "buffer window size")->required();
    discover->add_option("--arity", *arity,
                         "co-exclusion arity (0 = arity-free, capped)")
        ->required();
    discover->add_option("--format", *format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));
    discover->callback([=, &action]() {
      action = [=]() {
        Engine engine(*window, *arity);
        std::size_t count = 0;
        for (const Event& e : read_trace(*trace)) {
          engine.ingest(e);
          ++count;
        }
        if (*format == "dot") {
          output->write(registry_dot(engine.registry()));
        } else {
          Json j = registry_json(engine.registry());
          j["events"] = count;
          j["discovered"] = engine.registry().meta_count();
          output->json(j);
        }
      };
    });
  }

  // ---- trickle -----------------------------------------------------------
  auto* trick = app.add_subcommand("trickle", "goal decomposition over a registry");
  {
    auto target = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(0);
    auto budget = std::make_shared<int>(0);
    auto trace = std::make_shared<std::string>();
    auto window = std::make_shared<double>(0.0);
    auto arity = std::make_shared<int>(2);
    auto frozen = std::make_shared<std::string>();
    auto desired = std::make_shared<int>(0);
    trick->add_option("--target", *target, "meta-sensor name action_id:dual_id")
        ->required();
    trick->add_option("--seed", *seed, "pseudo-random seed")->required();
    trick->add_option("--budget", *budget, "decomposition budget")->required();
    trick->add_option("--trace", *trace, "trace that builds the registry")
        ->required();
    trick->add_option("--window", *window, "buffer window for the trace");
    trick->add_option("--arity", *arity, "discovery arity for the trace");
    trick->add_option("--frozen", *frozen,
                      "comma-separated sensors the environment refuses to flip");
    trick->add_option("--desired", *desired,
                      "target orientation (default: flip from current)");
    trick->callback([=, &action]() {
      action = [=]() {
        Engine engine(*window, *arity);
        for (const Event& e : read_trace(*trace)) engine.ingest(e);
        Registry& reg = engine.registry();
        auto node = reg.find_node(*target);
        if (!node) throw Error("no node named " + *target + " in the registry");
        Goal goal;
        goal.target = *node;
        goal.desired =
            *desired != 0 ? *desired : -reg.node_orientation(*node);
        if (goal.desired != 1 && goal.desired != -1)
          throw Error("--desired must be +1 or -1");
        goal.budget = *budget;
        TrickleResult result = trickle(reg, goal, *seed, split_names(*frozen));
        output->json(trickle_json(goal, result, *seed, reg));
      };
    });
  }

  // ---- bitbang -----------------------------------------------------------
  auto* bitbang = app.add_subcommand("bitbang", "void derivation and its tables");
  bitbang->require_subcommand(1);
  bitbang->add_subcommand("derive", "replay the five derivation steps")
      ->callback([&action, output]() {
        action = [output]() { output->json(derivation_json()); };
      });
  {
    auto* quat = bitbang->add_subcommand("quaternions", "verify the defining relations");
    auto sig = std::make_shared<int>(-1);
    auto mapping = std::make_shared<std::string>();
    quat->add_option("--sig", *sig, "uniform basis square (default -1 here)");
    quat->add_option("--mapping", *mapping,
                     "cyclic (e3 = s3s1) or ascending (e3 = s1s3); default "
                     "follows the signature")
        ->check(CLI::IsMember({"cyclic", "ascending"}));
    quat->callback([=, &action]() {
      action = [=]() {
        int sign = check_sign(*sig);
        std::string choice =
            mapping->empty() ? (sign == -1 ? "cyclic" : "ascending") : *mapping;
        auto e = choice == "cyclic" ? cyclic_mapping() : ascending_mapping();
        Json j = quaternion_json(
            quaternion_check(Signature::uniform(3, sign), e), sign);
        j["mapping_name"] = choice;
        output->json(j);
      };
    });
  }
  {
    auto* tetra = bitbang->add_subcommand("tetra", "eight states and their tetrahedra");
    auto format = std::make_shared<std::string>("json");
    tetra->add_option("--format", *format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));
    tetra->callback([=, &action]() {
      action = [=]() {
        if (*format == "dot")
          output->write(tetra_dot());
        else
          output->json(spinor_table_json());
      };
    });
  }
  bitbang->add_subcommand("pci", "mixed-level flip table")
      ->callback([&action, output]() {
        action = [output]() { output->json(pci_json()); };
      });

  // ---- ch ----------------------------------------------------------------
  auto* ch = app.add_subcommand("ch", "combinatorial hierarchy counting");
  ch->require_subcommand(1);
  {
    auto* table = ch->add_subcommand("table", "levels of the counting table");
    auto levels = std::make_shared<int>(4);
    table->add_option("--levels", *levels, "levels to emit, 1..4")->required();
    table->callback([=, &action]() {
      action = [=]() { output->json(ch_table_json(*levels)); };
    });
  }
  {
    auto* dcs = ch->add_subcommand("dcs", "discriminately closed subsets");
    auto generators = std::make_shared<int>(2);
    dcs->add_option("--generators", *generators, "basis symbols, 1..7")
        ->required();
    dcs->callback([=, &action]() {
      action = [=]() { output->json(dcs_json(*generators)); };
    });
  }

  // ---- ladder ------------------------------------------------------------
  auto* ladder = app.add_subcommand("ladder", "chain/cochain rank and kernel report");
  {
    auto sensors = std::make_shared<int>(0);
    auto format = std::make_shared<std::string>("json");
    ladder->add_option("--sensors", *sensors, "universe size, 1..8")->required();
    ladder->add_option("--format", *format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));
    ladder->callback([=, &action]() {
      action = [=]() {
        LadderReport report = ladder_report(*sensors);
        if (*format == "dot")
          output->write(ladder_dot(report));
        else
          output->json(ladder_json(report));
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pw
