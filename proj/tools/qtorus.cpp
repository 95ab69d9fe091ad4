// qtorus: command-line front end.
//
// Exit codes: 0 ok, 1 usage or parse error, 2 dimension not certified where
// exactness was required, 3 a checker reported `violated`.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qtorus/dimension.hpp"
#include "qtorus/harness.hpp"
#include "qtorus/instance_io.hpp"
#include "qtorus/twisted_algebra.hpp"

using namespace qtorus;
using io::Json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_inconclusive = 2;
constexpr int exit_violated = 3;

struct Common {
  int bound = 2;
  int combo_samples = 64;
  std::optional<long long> time_budget_ms;
  std::uint64_t seed = 0x5eed;
  bool json = false;
  bool require_exact = false;
  std::string output;
};

DimensionOptions options_from(const Common& c) {
  DimensionOptions o;
  o.search_bound = c.bound;
  o.combo_samples = c.combo_samples;
  o.seed = c.seed;
  if (const char* env = std::getenv("QTORUS_TIME_BUDGET_MS")) {
    try {
      o.time_budget = std::chrono::milliseconds(std::stoll(env));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed QTORUS_TIME_BUDGET_MS='" << env << "'\n";
    }
  }
  if (c.time_budget_ms) o.time_budget = std::chrono::milliseconds(*c.time_budget_ms);
  return o;
}

// Compact with --json, indented otherwise. Either way stdout holds only JSON.
void emit(const Json& j, const Common& c) {
  if (!c.output.empty()) {
    std::ofstream out(c.output);
    if (!out) throw std::runtime_error(c.output + ": cannot open for writing");
    out << j.dump(2) << '\n';
    return;
  }
  std::cout << (c.json ? j.dump() : j.dump(2)) << '\n';
}

MergeMode parse_mode(const std::string& s) { return s == "disjoint" ? MergeMode::disjoint : MergeMode::shared; }

void add_dim_flags(CLI::App* sub, Common& c) {
  sub->add_option("--bound", c.bound, "entry bound for the isotropic search box")->check(CLI::Range(0, 8));
  sub->add_option("--combo-samples", c.combo_samples, "pencil combinations tried for the upper bound")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--time-budget", c.time_budget_ms, "search time budget in milliseconds")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", c.seed, "seed for sampled combinations");
  sub->add_flag("--require-exact", c.require_exact, "exit 2 unless the dimension is certified exactly");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimension tools for quantum tori given by multiparameter matrices"};
  app.require_subcommand(1);
  Common c;
  app.add_flag("--json", c.json, "compact single-line JSON on stdout");

  std::string file, file2, mode = "shared", basis, elem_a, elem_b;

  auto* dim = app.add_subcommand("dim", "certified dimension interval with a commutative witness");
  dim->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
  add_dim_flags(dim, c);

  auto* center = app.add_subcommand("center", "radical of the pairing; center is F iff it is zero");
  center->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);

  auto* codim = app.add_subcommand("codim", "rank minus dimension (needs an exact dimension)");
  codim->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
  add_dim_flags(codim, c);

  auto* tens = app.add_subcommand("tensor", "tensor product of two instances");
  tens->add_option("first", file, "instance file")->required()->check(CLI::ExistingFile);
  tens->add_option("second", file2, "instance file")->required()->check(CLI::ExistingFile);
  tens->add_option("--mode", mode, "value group merge")->check(CLI::IsMember({"shared", "disjoint"}));
  tens->add_option("-o,--output", c.output, "write the instance here instead of stdout");

  auto* transp = app.add_subcommand("transpose", "transpose of an instance");
  transp->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
  transp->add_option("-o,--output", c.output, "write the instance here instead of stdout");

  auto* restr = app.add_subcommand("restrict", "pairing induced on a sublattice, as an instance");
  restr->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
  restr->add_option("--basis", basis, "generator rows as JSON, e.g. [[2,0],[0,1]]")->required();
  restr->add_option("-o,--output", c.output, "write the instance here instead of stdout");

  std::string kind = "independent";
  std::size_t gen_n = 3, gen_k = 1;
  std::int64_t gen_m = 1;
  int gen_exp = 2;
  std::uint64_t gen_seed = 1;
  std::vector<std::string> gen_out;
  auto* gen = app.add_subcommand("generate", "write a generated instance");
  gen->add_option("--kind", kind, "independent | random | transpose-pair | commutative")
      ->check(CLI::IsMember({"independent", "random", "transpose-pair", "commutative"}));
  gen->add_option("-n,--rank", gen_n, "rank n")->check(CLI::Range(1, 64));
  gen->add_option("-k,--free", gen_k, "free generators (random)")->check(CLI::Range(0, 64));
  gen->add_option("-m,--torsion", gen_m, "torsion order (random)")->check(CLI::PositiveNumber);
  gen->add_option("--exponent-bound", gen_exp, "exponent bound (random)")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_seed, "seed (random)");
  gen->add_option("-o,--output", gen_out, "output file(s); transpose-pair takes two")->expected(0, 2);

  harness::CampaignConfig cfg;
  auto* verify = app.add_subcommand("verify", "randomized campaign over all tensor statements");
  verify->add_option("--trials", cfg.trials, "number of instance pairs");
  verify->add_option("--seed", cfg.seed, "campaign seed");
  verify->add_option("--max-rank", cfg.max_rank, "largest factor rank")->check(CLI::Range(1, 6));
  verify->add_option("--max-free", cfg.max_free, "largest number of free generators")->check(CLI::Range(0, 6));
  verify->add_option("--exponent-bound", cfg.exponent_bound, "exponent bound")->check(CLI::NonNegativeNumber);
  verify->add_option("--torsion", cfg.torsion_order, "torsion order")->check(CLI::PositiveNumber);
  verify->add_option("--mode", mode, "value group merge")->check(CLI::IsMember({"shared", "disjoint"}));
  verify->add_option("--oracle-bound", cfg.oracle_bound, "brute-force box for tensor cross-checks, 0 = off")
      ->check(CLI::Range(0, 2));
  verify->add_option("--threads", cfg.threads, "worker threads, 0 = all cores");
  verify->add_option("-o,--output", c.output, "write the report here instead of stdout");

  auto* emul = app.add_subcommand("element-mul", "multiply two elements of the twisted group algebra");
  emul->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
  emul->add_option("--a", elem_a, "terms as JSON: [{\"coef\":\"1/2\",\"q\":{\"q\":1},\"x\":[1,0]}]")->required();
  emul->add_option("--b", elem_b, "terms as JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*dim) {
      const auto lambda = io::read_instance(file);
      const DimensionResult d = dimension(lambda, options_from(c));
      emit(io::to_json(d), c);
      if (c.require_exact && !d.exact) {
        std::cerr << "dimension not certified: [" << d.lower << ", " << d.upper << "]\n";
        return exit_inconclusive;
      }
    } else if (*center) {
      const auto lambda = io::read_instance(file);
      const Pairing p = pairing_of(lambda);
      const Sublattice r = radical(p);
      emit(Json{{"center_is_F", r.rank() == 0}, {"radical_rank", r.rank()}, {"radical", io::to_json(r)}}, c);
    } else if (*codim) {
      const auto lambda = io::read_instance(file);
      const DimensionResult d = dimension(lambda, options_from(c));
      if (!d.exact) {
        std::cerr << "codim: dimension only certified in [" << d.lower << ", " << d.upper << "]\n";
        emit(Json{{"codimension", nullptr}, {"dimension", io::to_json(d)}}, c);
        return exit_inconclusive;
      }
      emit(Json{{"codimension", static_cast<int>(lambda.rank()) - d.lower}, {"dimension", io::to_json(d)}}, c);
    } else if (*tens) {
      emit(io::serialize(tensor(io::read_instance(file), io::read_instance(file2), parse_mode(mode))), c);
    } else if (*transp) {
      emit(io::serialize(transpose(io::read_instance(file))), c);
    } else if (*restr) {
      const auto lambda = io::read_instance(file);
      Json bj;
      try {
        bj = Json::parse(basis);
      } catch (const nlohmann::json::parse_error& e) {
        throw io::ParseError(std::string("--basis: ") + e.what());
      }
      const Sublattice b = io::parse_sublattice(bj, lambda.rank());
      if (b.rank() == 0) throw io::ParseError("--basis: sublattice has rank 0");
      emit(io::serialize(to_multiparameter(restrict(pairing_of(lambda), b))), c);
    } else if (*gen) {
      std::vector<MultiparameterMatrix> out;
      if (kind == "independent") {
        out.push_back(harness::gen_independent(gen_n));
      } else if (kind == "commutative") {
        out.push_back(harness::gen_commutative(gen_n));
      } else if (kind == "random") {
        out.push_back(harness::gen_random(gen_n, gen_k, gen_m, gen_exp, gen_seed));
      } else {
        auto [a, b] = harness::gen_transpose_pair(gen_n);
        out.push_back(std::move(a));
        out.push_back(std::move(b));
      }
      if (out.size() == 2 && gen_out.size() == 1)
        throw io::ParseError("generate: transpose-pair needs two -o paths or none");
      if (gen_out.empty()) {
        if (out.size() == 1) {
          emit(io::serialize(out[0]), c);
        } else {
          emit(Json::array({io::serialize(out[0]), io::serialize(out[1])}), c);
        }
      } else {
        for (std::size_t i = 0; i < out.size() && i < gen_out.size(); ++i) io::write_instance(gen_out[i], out[i]);
      }
    } else if (*verify) {
      cfg.mode = parse_mode(mode);
      const harness::Report r = harness::run_campaign(cfg);
      emit(harness::to_json(r), c);
      if (r.total_violations() > 0) {
        std::cerr << "verify: " << r.total_violations() << " violated verdict(s)\n";
        return exit_violated;
      }
    } else if (*emul) {
      auto ctx = std::make_shared<const MultiparameterMatrix>(io::read_instance(file));
      const auto a = io::parse_element(Json::parse(elem_a), ctx);
      const auto b = io::parse_element(Json::parse(elem_b), ctx);
      const auto prod = a * b;
      emit(Json{{"product", io::to_json(prod)}, {"text", prod.to_string()}}, c);
    }
  } catch (const std::exception& e) {
    // Parse, schema and invariant errors all land here.
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_ok;
}
