// addxor: decide, synthesize, enumerate and check add/xor bit-vector
// expressions over Z_q, q a power of two.
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "addxor/anf.hpp"
#include "addxor/errors.hpp"
#include "addxor/expr.hpp"
#include "addxor/expressibility.hpp"
#include "addxor/identities.hpp"
#include "addxor/synth.hpp"
#include "addxor/table_io.hpp"
#include "addxor/word.hpp"

namespace {

using namespace addxor;

constexpr int exit_ok = 0;
constexpr int exit_no = 1;        // the mathematical answer is NO / FAILS
constexpr int exit_verify = 2;    // re-evaluation disagreed: internal bug
constexpr int exit_usage = 64;    // bad flags, bad q, gated subcommand
constexpr int exit_input = 65;    // malformed table/expression, guard or cap

TruthTable load_checked(const std::string& path, std::uint32_t q, int k) {
  TruthTable t = load_table_json(path);
  if (t.modulus().q() != q)
    throw table_format_error(path + ": table declares q = " +
                             std::to_string(t.modulus().q()) + " but --q " +
                             std::to_string(q) + " was given");
  if (t.arity() != k)
    throw table_format_error(path + ": table declares k = " +
                             std::to_string(t.arity()) + " but --k " +
                             std::to_string(k) + " was given");
  return t;
}

int run_decide(std::uint32_t q, int k, const std::string& path) {
  const TruthTable t = load_checked(path, q, k);
  const Verdict v = decide_algebraic(t);
  if (v.algebraic) {
    std::cout << "YES  " << v.witness->render() << "\n";
    return exit_ok;
  }
  std::cout << "NO  " << v.failure->describe() << "\n";
  return exit_no;
}

int run_synth(std::uint32_t q, int k, const std::string& path, bool verify) {
  const TruthTable t = load_checked(path, q, k);
  const Verdict v = decide_algebraic(t);
  if (!v.algebraic) {
    std::cout << "NO  " << v.failure->describe() << "\n";
    return exit_no;
  }
  const ExprPtr e = synthesize(*v.witness);
  std::cout << render(e) << "\n";
  if (verify && !(table_of(e, t.modulus(), k) == t)) {
    std::cerr << "verification failed: the emitted expression does not "
                 "reproduce the input table\n";
    return exit_verify;
  }
  return exit_ok;
}

int run_count(std::uint32_t q, int k) {
  std::cout << count_free_algebra(k, Modulus::from_q(q)).str() << "\n";
  return exit_ok;
}

int run_enumerate(std::uint32_t q, int k, std::uint64_t limit) {
  const Modulus m = Modulus::from_q(q);
  for (const auto& [poly, table] : enumerate_free_algebra(k, m, limit))
    std::cout << poly.render() << "\t" << render(synthesize(poly)) << "\t"
              << render_table_values(table) << "\n";
  return exit_ok;
}

int run_check(std::uint32_t q, const std::string& text) {
  const Identity id = parse_identity(text, Modulus::from_q(q));
  const CheckResult r = check_identity(id);
  std::cout << r.describe() << "\n";
  return r.holds ? exit_ok : exit_no;
}

int run_ring(std::uint32_t q) {
  const Modulus m = Modulus::from_q(q);
  const RingReport report = verify_ring_axioms(m);
  std::cout << report.to_text();
  if (m.q() > 1024) {
    std::cout << "commutator formula and addition check skipped: the pair "
                 "sweep is exhaustive and limited to q <= 1024\n";
    return report.all_pass ? exit_ok : exit_no;
  }
  const int k = verify_commutator_formula(m);
  std::cout << "minimal k with f_k = [x,y]: " << k << "\n";
  std::cout << "f_" << k << " = " << render_ring(build_fk(k, m)) << "\n";
  std::cout << "x + y = " << render_ring(express_add_in_ring(m))
            << "  (verified exhaustively)\n";
  return report.all_pass ? exit_ok : exit_no;
}

int run_basis(std::uint32_t q) {
  for (const Identity& id : emit_basis(Modulus::from_q(q)))
    std::cout << render_identity(id) << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Algebraic functions over Z_q under + (mod q) and ^ (bitwise xor)"};
  app.require_subcommand(1);

  std::uint32_t q = 0;
  int k = 1;
  std::uint64_t limit = default_enumeration_cap;
  std::string table_path;
  std::string identity_text;
  bool verify = false;

  const auto add_q = [&](CLI::App* cmd) {
    cmd->add_option("--q", q, "modulus, a power of two between 2 and 65536")
        ->required();
  };
  const auto add_k = [&](CLI::App* cmd) {
    cmd->add_option("--k", k, "number of arguments")
        ->required()
        ->check(CLI::PositiveNumber);
  };

  CLI::App* decide =
      app.add_subcommand("decide", "is a truth table realizable with + and ^");
  add_q(decide);
  add_k(decide);
  decide->add_option("--table", table_path, "JSON truth table file")
      ->required();

  CLI::App* synth = app.add_subcommand(
      "synth", "emit a + / ^ expression computing a truth table");
  add_q(synth);
  add_k(synth);
  synth->add_option("--table", table_path, "JSON truth table file")->required();
  synth->add_flag("--verify", verify,
                  "re-evaluate the emitted expression against the table");

  CLI::App* count = app.add_subcommand(
      "count", "number of k-argument functions realizable with + and ^");
  add_q(count);
  add_k(count);

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "list every realizable function: polynomial, expression, "
                   "table");
  add_q(enumerate);
  add_k(enumerate);
  enumerate->add_option("--limit", limit,
                        "fail instead of listing more than this many");

  CLI::App* check =
      app.add_subcommand("check", "test an identity \"<expr> = <expr>\"");
  add_q(check);
  check->add_option("identity", identity_text, "identity to test")->required();

  CLI::App* ring = app.add_subcommand(
      "ring", "verify the nilpotent-ring presentation (xor, circ) of Z_q");
  add_q(ring);

  CLI::App* basis = app.add_subcommand(
      "basis", "emit the operation-table identity basis (q = 2 only)");
  add_q(basis);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*decide) return run_decide(q, k, table_path);
    if (*synth) return run_synth(q, k, table_path, verify);
    if (*count) return run_count(q, k);
    if (*enumerate) return run_enumerate(q, k, limit);
    if (*check) return run_check(q, identity_text);
    if (*ring) return run_ring(q);
    if (*basis) return run_basis(q);
    return exit_usage;
  } catch (const unsupported_modulus& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  } catch (const verification_error& e) {
    std::cerr << e.what() << "\n";
    return exit_verify;
  } catch (const parse_error& e) {
    std::cerr << e.what() << "\n";
    return exit_input;
  } catch (const table_format_error& e) {
    std::cerr << e.what() << "\n";
    return exit_input;
  } catch (const guard_exceeded& e) {
    std::cerr << e.what() << "\n";
    return exit_input;
  } catch (const cap_exceeded& e) {
    std::cerr << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
