// nestlie: spaces, decompositions and certificates for Lie n-derivations of
// block upper-triangular algebras.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nestlie/nestlie.hpp"

namespace {

using nestlie::io::Json;

enum Exit : int { kOk = 0, kInput = 1, kBudget = 2, kNotLie = 3, kViolation = 4, kVerifyFail = 5 };

struct InputError : nestlie::Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Common {
  std::string nest;
  std::string nest_file;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  std::uint64_t budget_tuples = nestlie::Budget{}.max_tuples;
  std::string out;

  nestlie::Budget budget() const {
    nestlie::Budget b;
    b.max_tuples = budget_tuples;
    return b;
  }

  std::optional<nestlie::NestSpec> spec() const {
    if (!nest.empty() && !nest_file.empty()) throw InputError("give either --nest or --nest-file");
    if (!nest.empty()) return nestlie::io::decode_nest(nestlie::io::parse(nest));
    if (!nest_file.empty()) return nestlie::io::decode_nest(nestlie::io::parse(read_file(nest_file)));
    return std::nullopt;
  }

  nestlie::NestSpec require_spec() const {
    auto s = spec();
    if (!s) throw InputError("a nest is required (--nest or --nest-file)");
    return *s;
  }
};

void add_nest_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--nest", c.nest, "nest as JSON, e.g. '{\"blocks\":[1,2]}'");
  cmd->add_option("--nest-file", c.nest_file, "file holding the nest JSON");
}

void add_common(CLI::App* cmd, Common& c) {
  add_nest_options(cmd, c);
  cmd->add_option("--n", c.n, "order of the commutator tower (n >= 2)")->check(CLI::Range(2, 64));
  cmd->add_option("--seed", c.seed, "seed recorded in the output");
  cmd->add_option("--budget-tuples", c.budget_tuples, "largest d^n the constraint assembly may enumerate");
  cmd->add_option("--out", c.out, "output file (default: stdout)");
}

// ---- spaces ----

int cmd_spaces(const Common& c, bool emit_bases) {
  const auto spec = c.require_spec();
  const auto der = nestlie::derivation_space(spec);
  const auto cv = nestlie::central_vanishing_space(spec, c.n);
  const auto lie = nestlie::lie_n_space(spec, c.n, c.budget());
  const auto kn = nestlie::commutator_value_space(spec, c.n);
  Json out{{"nest", nestlie::io::encode(spec)}, {"n", c.n}, {"seed", c.seed}};
  out["dims"] = Json{{"derivation", der.dim()}, {"central_vanishing", cv.dim()}, {"lie_n", lie.dim()}, {"K_n", kn.dim()}};
  if (emit_bases) {
    Json kn_basis = Json::array();
    for (const auto& v : kn.basis()) kn_basis.push_back(nestlie::io::encode(v));
    out["bases"] = Json{{"derivation", nestlie::io::encode(der)},
                        {"central_vanishing", nestlie::io::encode(cv)},
                        {"lie_n", nestlie::io::encode(lie)},
                        {"K_n", std::move(kn_basis)}};
  }
  write_output(c.out, dump(out));
  return kOk;
}

// ---- decompose ----

nestlie::LinMap random_lie_map(const nestlie::NestSpec& spec, std::size_t n, std::uint64_t seed,
                               const nestlie::Budget& budget) {
  const auto space = nestlie::lie_n_space(spec, n, budget);
  nestlie::Rng rng(seed);
  std::vector<nestlie::GaussianRational> coeffs;
  for (std::size_t i = 0; i < space.dim(); ++i) coeffs.push_back(rng.small_integer(5));
  return space.combination(coeffs);
}

int cmd_decompose(const Common& c, const std::string& map_file, bool random, const std::string& route_name) {
  if (random == !map_file.empty()) throw InputError("give exactly one of --map FILE or --random");
  nestlie::LinMap map;
  if (random) {
    map = random_lie_map(c.require_spec(), c.n, c.seed, c.budget());
  } else {
    map = nestlie::io::decode_linmap(nestlie::io::parse(read_file(map_file)));
    if (auto s = c.spec(); s && *s != map.spec()) throw InputError("--nest does not match the nest of the map");
  }
  const nestlie::Route route =
      route_name.empty() ? nestlie::default_route(map.spec()) : nestlie::io::decode_route(route_name);

  try {
    const auto cert = nestlie::decompose(map, c.n, route);
    Json out = nestlie::io::encode(cert);
    out["seed"] = c.seed;
    write_output(c.out, dump(out));
    return cert.verified ? kOk : kVerifyFail;
  } catch (const nestlie::NotLieN& e) {
    Json tuple = Json::array();
    for (const auto& u : e.tuple()) tuple.push_back(nestlie::io::encode_unit(u));
    Json report{{"error", "NOT-LIE-N"}, {"n", c.n}, {"tuple", tuple},
                {"lhs", nestlie::io::encode(e.lhs())}, {"rhs", nestlie::io::encode(e.rhs())}};
    std::cerr << dump(report);
    return kNotLie;
  } catch (const nestlie::TheoremViolationError& e) {
    Json report = nestlie::io::encode(e.violation());
    report["seed"] = c.seed;
    std::cerr << dump(report);
    if (!c.out.empty()) write_output(c.out, dump(report));
    return kViolation;
  }
}

// ---- verify ----

int cmd_verify(const std::string& path) {
  const auto cert = nestlie::io::decode_certificate(nestlie::io::parse(read_file(path)));
  const auto report = nestlie::verify_certificate_report(cert);
  if (report.ok()) {
    std::cout << "verified\n";
    return kOk;
  }
  std::cout << "rejected: " << report.failure << "\n";
  return kVerifyFail;
}

// ---- survey ----

std::vector<nestlie::NestSpec> parse_nest_list(const std::string& text) {
  const Json j = nestlie::io::parse(text);
  if (!j.is_array()) throw InputError("--nests must be a JSON array");
  std::vector<nestlie::NestSpec> out;
  for (const auto& e : j) {
    if (e.is_object()) {
      out.push_back(nestlie::io::decode_nest(e));
    } else {
      out.push_back(nestlie::io::decode_nest(Json{{"blocks", e}}));
    }
  }
  return out;
}

std::string survey_row(const nestlie::NestSpec& spec, std::size_t n, const nestlie::Budget& budget,
                       std::uint64_t seed) {
  const nestlie::AlgBasis basis(spec);
  std::ostringstream row;
  row << '"' << spec.str() << "\"," << n << ',' << basis.size() << ',';
  try {
    const auto lie = nestlie::lie_n_space(spec, n, budget);
    const auto der = nestlie::derivation_space(spec);
    const auto cv = nestlie::central_vanishing_space(spec, n);
    const auto kn = nestlie::commutator_value_space(spec, n);
    const auto gauge = nestlie::central_derivations(spec);
    const bool identity = lie.dim() == der.dim() + cv.dim() - gauge.dim();
    row << der.dim() << ',' << cv.dim() << ',' << lie.dim() << ',' << kn.dim() << ',' << gauge.dim() << ','
        << (identity ? "true" : "false") << ",OK";
  } catch (const nestlie::BudgetExceeded&) {
    row << ",,,,,,BUDGET";
  }
  row << ',' << seed << '\n';
  return row.str();
}

int cmd_survey(const Common& c, const std::string& nests, const std::vector<std::size_t>& orders, unsigned jobs) {
  const auto specs = parse_nest_list(nests);
  for (auto n : orders)
    if (n < 2) throw InputError("orders must be >= 2");
  struct Job {
    nestlie::NestSpec spec;
    std::size_t n;
  };
  std::vector<Job> work;
  for (const auto& s : specs)
    for (auto n : orders) work.push_back({s, n});

  std::vector<std::string> rows(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < work.size();)
      rows[i] = survey_row(work[i].spec, work[i].n, c.budget(), c.seed);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(work.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string text = "blocks,n,d,derivation,central_vanishing,lie_n,K_n,gauge,identity,status,seed\n";
  for (const auto& r : rows) text += r;
  write_output(c.out, text);
  return kOk;
}

// ---- conditions ----

int cmd_conditions(const Common& c, const std::string& sub_file, bool full) {
  std::optional<nestlie::SubalgebraSpec> sub;
  if (full) {
    if (!sub_file.empty()) throw InputError("give either --subalgebra or --full");
    sub = nestlie::SubalgebraSpec::full(c.require_spec());
  } else {
    if (sub_file.empty()) throw InputError("give --subalgebra FILE or --full with a nest");
    sub = nestlie::io::decode_subalgebra(nestlie::io::parse(read_file(sub_file)));
  }
  Json out = nestlie::io::encode(nestlie::check_spade(*sub, c.seed));
  write_output(c.out, dump(out));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spaces and standard-form decompositions of Lie n-derivations on nest algebras"};
  app.require_subcommand(1);

  Common common;

  auto* spaces = app.add_subcommand("spaces", "dimensions (and optionally bases) of the map spaces");
  add_common(spaces, common);
  bool emit_bases = false;
  spaces->add_flag("--emit-bases", emit_bases, "include the echelon bases in the report");

  auto* decompose = app.add_subcommand("decompose", "write a standard-form certificate for a Lie n-derivation");
  add_common(decompose, common);
  std::string map_file, route_name;
  bool random = false;
  decompose->add_option("--map", map_file, "LinMap JSON file");
  decompose->add_flag("--random", random, "sample an integer combination of the Lie n basis");
  decompose->add_option("--route", route_name, "generic, dim1 or general (default: chosen by the last block)");

  auto* verify = app.add_subcommand("verify", "recheck a certificate");
  std::string cert_file;
  verify->add_option("certificate", cert_file, "certificate JSON file")->required();

  auto* survey = app.add_subcommand("survey", "dimension table over several nests and orders (CSV)");
  add_common(survey, common);
  std::string nests = "[]";
  std::vector<std::size_t> orders{2, 3};
  unsigned jobs = 1;
  survey->add_option("--nests", nests, "JSON array of block lists, e.g. '[[1,1],[1,2]]'");
  survey->add_option("--orders", orders, "orders n")->delimiter(',');
  survey->add_option("--jobs", jobs, "worker threads");

  auto* conditions = app.add_subcommand("conditions", "check the spade conditions for a subalgebra");
  add_common(conditions, common);
  std::string sub_file;
  bool full = false;
  conditions->add_option("--subalgebra", sub_file, "SubalgebraSpec JSON file");
  conditions->add_flag("--full", full, "use the whole algebra of --nest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  try {
    if (*spaces) return cmd_spaces(common, emit_bases);
    if (*decompose) return cmd_decompose(common, map_file, random, route_name);
    if (*verify) return cmd_verify(cert_file);
    if (*survey) return cmd_survey(common, nests, orders, jobs);
    if (*conditions) return cmd_conditions(common, sub_file, full);
  } catch (const nestlie::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const nestlie::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
