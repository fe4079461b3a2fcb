#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gwalsh/diagnostics.hpp"
#include "gwalsh/matrix_io.hpp"
#include "gwalsh/protocol.hpp"
#include "gwalsh/series.hpp"
#include "gwalsh/signal_io.hpp"
#include "gwalsh/transform.hpp"

namespace gwalsh::cli {

namespace {

struct Options {
  std::string matrix;
  std::string matrix_b;
  int n = 0;
  int q = 0;
  std::uint64_t seed = 0;
  double tol = kExternalTol;
  std::string out;
  std::string in;

  bool complex_entries = false;
  std::optional<double> entry;
  int row = 2;
  std::string branch = "plus";
  std::optional<double> r;
  std::vector<std::uint64_t> k_list;
  std::uint64_t mask_seed = 0;
  std::string signal;
  std::string signal_inline;
  int signal_base = 0;
  std::string masked_in;
  std::string masked_out;
  bool include_trivial = false;
  std::string channel_dir;
  std::size_t pairs = 1000;
};

Branch parse_branch(const std::string& s) { return s == "minus" ? Branch::Minus : Branch::Plus; }

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty())
    out << text;
  else
    write_text_file(o.out, text);
}

void require_out(const Options& o) {
  if (o.out.empty()) throw Error(ErrorCode::InvalidArgument, "--out is required");
}

Signal load_signal(const Options& o, int default_base) {
  if (!o.signal.empty() && !o.signal_inline.empty())
    throw Error(ErrorCode::InvalidArgument, "give --signal or --signal-inline, not both");
  if (!o.signal_inline.empty())
    return signal_from_digits(o.signal_inline, o.signal_base ? o.signal_base : default_base);
  if (o.signal.empty()) throw Error(ErrorCode::InvalidArgument, "--signal or --signal-inline is required");
  return signal_from_csv(read_text_file(o.signal));
}

int gen_matrix(const Options& o) {
  require_out(o);
  std::optional<WalshMatrix> m;
  if (o.entry) {
    if (o.n != 0 && o.n != 3)
      throw Error(ErrorCode::InvalidArgument, "--entry construction is for n = 3");
    m = generate_n3(*o.entry, o.row == 3 ? RowChoice::Third : RowChoice::Second,
                    parse_branch(o.branch));
  } else {
    if (o.n < 2) throw Error(ErrorCode::InvalidArgument, "--n >= 2 is required");
    m = generate_random(o.n, o.seed, o.complex_entries);
  }
  save_matrix(*m, o.out);
  return 0;
}

int solve_b(const Options& o) {
  require_out(o);
  const WalshMatrix a = load_matrix(o.matrix);
  if (o.r) {
    save_matrix(solve_b_n3(a, *o.r, parse_branch(o.branch)), o.out);
    return 0;
  }
  const MaskedConstraintSystem masked =
      o.masked_in.empty() ? mask_constraints(a, o.mask_seed, o.complex_entries)
                          : masked_from_json(read_text_file(o.masked_in), a.n());
  if (!o.masked_out.empty()) write_text_file(o.masked_out, masked_to_json(masked));
  NumericSolveOptions options;
  options.exclude_trivial = !o.include_trivial;
  save_matrix(solve_b_numeric(a, masked, o.seed, o.tol, options), o.out);
  return 0;
}

int encode(const Options& o) {
  require_out(o);
  const WalshMatrix a = load_matrix(o.matrix);
  write_text_file(o.out, coeffs_to_csv(dwt_fast(a, load_signal(o, a.n()))));
  return 0;
}

int decode(const Options& o) {
  require_out(o);
  const WalshMatrix a = load_matrix(o.matrix);
  write_text_file(o.out, signal_to_csv(idwt(a, coeffs_from_csv(read_text_file(o.in)))));
  return 0;
}

int series(const Options& o, std::ostream& out) {
  const WalshMatrix a = load_matrix(o.matrix);
  const Signal s = load_signal(o, a.n());
  if (o.k_list.empty()) throw Error(ErrorCode::InvalidArgument, "--k-list is required");
  emit(o, sweep_to_csv(convergence_sweep(a, s, o.k_list, o.q)), out);
  return 0;
}

int kernel(const Options& o, std::ostream& out, std::ostream& err) {
  const WalshMatrix a = load_matrix(o.matrix);
  const KernelCheckReport r = kernel_check(a, o.q, o.pairs, o.seed);
  const std::string text = "{\"pairs\": " + std::to_string(r.pairs) +
                           ", \"same_cell_pairs\": " + std::to_string(r.same_cell_pairs) +
                           ", \"max_deviation\": " + format_number(r.max_deviation, 17) + "}\n";
  emit(o, text, out);
  if (r.max_deviation > o.tol) {
    err << "kernel-check failed: dirichlet_max_deviation " << r.max_deviation << " > " << o.tol
        << "\n";
    return 1;
  }
  return 0;
}

int verify(const Options& o, std::ostream& out, std::ostream& err) {
  const WalshMatrix a = load_matrix(o.matrix);
  std::optional<WalshMatrix> b;
  if (!o.matrix_b.empty()) b = load_matrix(o.matrix_b);
  const VerifyReport report = verify_matrices(a, b, o.q, o.tol, o.seed);
  emit(o, report.to_json(), out);
  if (report.passed()) return 0;
  std::string failed;
  for (const CheckResult& c : report.checks)
    if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.name + "=" + format_number(c.value, 3);
  err << "verify failed: " << failed << "\n";
  return 1;
}

int exchange_cmd(const Options& o, std::ostream& err) {
  require_out(o);
  const WalshMatrix a = load_matrix(o.matrix);
  const WalshMatrix b = load_matrix(o.matrix_b);
  const Signal s = load_signal(o, a.n());
  std::optional<DirectoryChannel> dir;
  if (!o.channel_dir.empty()) {
    dir.emplace(o.channel_dir);
    // Alice publishes her masked pairing equation before any message.
    if (a.is_real())
      write_text_file(std::filesystem::path(o.channel_dir) / "masked.json",
                      masked_to_json(mask_constraints(a, o.mask_seed)));
  }
  const ExchangeTranscript t = run_exchange(a, b, s, dir ? &*dir : nullptr);
  write_text_file(o.out, transcript_to_json(t));
  if (t.pairing_violated) err << "warning: matrices do not satisfy the pairing condition\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Walsh transforms and the paired-matrix exchange"};
  app.require_subcommand(1, 1);
  Options o;

  const auto branch_check = CLI::IsMember({"plus", "minus"});
  auto common = [&](CLI::App* sub) { sub->add_option("--tol", o.tol, "tolerance (default 1e-8)"); };
  auto add_matrix = [&](CLI::App* sub, bool required) {
    sub->add_option("--matrix", o.matrix, "matrix JSON")->required(required)->check(CLI::ExistingFile);
  };
  auto add_signal = [&](CLI::App* sub) {
    sub->add_option("--signal", o.signal, "signal CSV")->check(CLI::ExistingFile);
    sub->add_option("--signal-inline", o.signal_inline, "signal as a digit string");
    sub->add_option("--signal-base", o.signal_base, "grid base of an inline signal (default: N)");
  };

  CLI::App* gen = app.add_subcommand("gen-matrix", "generate a Walsh matrix");
  gen->add_option("--n", o.n, "size N");
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_flag("--complex", o.complex_entries, "complex entries");
  gen->add_option("--entry", o.entry, "prescribed first entry of the chosen row (N = 3)");
  gen->add_option("--row", o.row, "row holding --entry (2 or 3)")->check(CLI::IsMember({2, 3}));
  gen->add_option("--branch", o.branch, "root choice")->check(branch_check);
  gen->add_option("--out", o.out, "output JSON");
  common(gen);

  CLI::App* solve = app.add_subcommand("solve-b", "find a matrix B pairing with A");
  add_matrix(solve, true);
  solve->add_option("--r", o.r, "free parameter of the closed-form N = 3 family");
  solve->add_option("--branch", o.branch, "root choice")->check(branch_check);
  solve->add_option("--mask-seed", o.mask_seed, "seed of the equation masking");
  solve->add_option("--seed", o.seed, "seed of the numeric starts");
  solve->add_option("--masked", o.masked_in, "published masked system (JSON)")->check(CLI::ExistingFile);
  solve->add_option("--masked-out", o.masked_out, "write the masked system here");
  solve->add_flag("--complex", o.complex_entries, "solve over complex entries");
  solve->add_flag("--include-trivial", o.include_trivial, "accept B = A");
  solve->add_option("--out", o.out, "output JSON");
  common(solve);

  CLI::App* enc = app.add_subcommand("encode", "forward transform of a signal");
  add_matrix(enc, true);
  add_signal(enc);
  enc->add_option("--out", o.out, "coefficient CSV");
  common(enc);

  CLI::App* dec = app.add_subcommand("decode", "inverse transform of coefficients");
  add_matrix(dec, true);
  dec->add_option("--in", o.in, "coefficient CSV")->required()->check(CLI::ExistingFile);
  dec->add_option("--out", o.out, "signal CSV");
  common(dec);

  CLI::App* ser = app.add_subcommand("series", "partial-sum convergence sweep");
  add_matrix(ser, true);
  add_signal(ser);
  ser->add_option("--k-list", o.k_list, "truncations, comma separated")->delimiter(',');
  ser->add_option("--q", o.q, "evaluation resolution")->required();
  ser->add_option("--out", o.out, "sweep CSV (default stdout)");
  common(ser);

  CLI::App* ker = app.add_subcommand("kernel-check", "Dirichlet kernel against its closed form");
  add_matrix(ker, true);
  ker->add_option("--q", o.q, "resolution")->required();
  ker->add_option("--seed", o.seed, "random seed");
  ker->add_option("--pairs", o.pairs, "number of (x, t) pairs");
  ker->add_option("--out", o.out, "report JSON (default stdout)");
  common(ker);

  CLI::App* ver = app.add_subcommand("verify", "diagnostic report for A and optionally B");
  add_matrix(ver, true);
  ver->add_option("--matrix-b", o.matrix_b, "second matrix")->check(CLI::ExistingFile);
  ver->add_option("--q", o.q, "resolution")->required();
  ver->add_option("--seed", o.seed, "seed of the random test signal");
  ver->add_option("--out", o.out, "report JSON (default stdout)");
  common(ver);

  CLI::App* ex = app.add_subcommand("exchange", "run the four-message exchange");
  add_matrix(ex, true);
  ex->add_option("--matrix-b", o.matrix_b, "Bob's matrix")->required()->check(CLI::ExistingFile);
  add_signal(ex);
  ex->add_option("--channel-dir", o.channel_dir, "write each message to this directory");
  ex->add_option("--mask-seed", o.mask_seed, "seed of the published masked system");
  ex->add_option("--out", o.out, "transcript JSON");
  common(ex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!(o.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
    if (*gen) return gen_matrix(o);
    if (*solve) return solve_b(o);
    if (*enc) return encode(o);
    if (*dec) return decode(o);
    if (*ser) return series(o, out);
    if (*ker) return kernel(o, out, err);
    if (*ver) return verify(o, out, err);
    if (*ex) return exchange_cmd(o, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numeric_failure(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace gwalsh::cli
