// schmidtkit: Schmidt decompositions and product / homogeneous-form tests for pure
// states stored as JSON.
//
//   schmidtkit decompose STATE [--split 0|1,2] [--tol 1e-10] [--deg-tol 1e-8]
//   schmidtkit schmidt-test STATE [--tol 1e-8] [--seed 1] [--seeds 2]
//   schmidtkit product-test STATE [--tol 1e-8]
//   schmidtkit gen KIND [...] [--out FILE]
//
// Exit codes: 0 success / Exists / IsProduct, 1 NotExists / NotProduct,
// 2 malformed state file, 3 bad flags, 4 Indeterminate. 70 means a bug.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schmidtkit/bipartite.hpp"
#include "schmidtkit/error.hpp"
#include "schmidtkit/multipartite.hpp"
#include "schmidtkit/report.hpp"
#include "schmidtkit/state_io.hpp"

using namespace schmidtkit;

namespace {

struct BadFlags : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  PureState state;
  ReportContext ctx;
};

Loaded load(const std::string& path, const std::string& command) {
  const std::string text = read_text_file(path);
  PureState s = parse_state_json(text);
  ReportContext ctx{command, sha256_hex(text), s.dims()};
  return {std::move(s), std::move(ctx)};
}

void check_tol(double tol, const char* name) {
  if (!std::isfinite(tol) || tol <= 0.0 || tol >= 1.0)
    throw BadFlags(std::string(name) + " must lie in (0, 1)");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw BadFlags("cannot write " + out);
  f << text;
}

// Errors from reading and normalizing the state file are input errors (2);
// anything the analysis rejects about the request itself is a flag error (3).
int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedInput:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::ZeroVector:
    case ErrorKind::NonFinite:
      return kExitMalformedInput;
    default:
      return kExitBadFlags;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schmidt decompositions and homogeneous-form tests for pure states"};
  app.set_version_flag("--version", std::string(SCHMIDTKIT_VERSION));
  app.require_subcommand(1);

  std::string file, out, split_spec;
  double tol = kDefaultRankTol, deg_tol = kDefaultDegeneracyTol;
  std::uint64_t seed = 1, seed_count = 2;

  auto* dec = app.add_subcommand("decompose", "Bipartite Schmidt decomposition");
  dec->add_option("file", file, "State file")->required();
  dec->add_option("--split", split_spec, "Bipartition L|R, e.g. 0,1|2 (default 0|rest)");
  dec->add_option("--tol", tol, "Relative rank tolerance")->capture_default_str();
  dec->add_option("--deg-tol", deg_tol, "Degeneracy tolerance relative to the largest weight")->capture_default_str();
  dec->add_option("-o,--out", out, "Write the report here instead of stdout");

  auto* gst = app.add_subcommand("schmidt-test", "Homogeneous Schmidt form on n >= 3 parties");
  gst->add_option("file", file, "State file")->required();
  auto* gst_tol = gst->add_option("--tol", tol, "Verdict tolerance (default 1e-8)");
  gst->add_option("--seed", seed, "First seed")->capture_default_str();
  gst->add_option("--seeds", seed_count, "Number of consecutive seeds")->capture_default_str();
  gst->add_option("-o,--out", out, "Write the report here instead of stdout");

  auto* pt = app.add_subcommand("product-test", "Full product-state test");
  pt->add_option("file", file, "State file")->required();
  auto* pt_tol = pt->add_option("--tol", tol, "Verdict tolerance (default 1e-8)");
  pt->add_option("-o,--out", out, "Write the report here instead of stdout");

  std::string kind;
  std::vector<double> coeffs;
  std::vector<std::size_t> dims;
  std::size_t parties = 3, dim = 2;
  auto* gen = app.add_subcommand("gen", "Write a fixture state file");
  gen->add_option("kind", kind, "singlet | ghz | w | correlated | random | product")
      ->required()
      ->check(CLI::IsMember({"singlet", "ghz", "w", "correlated", "random", "product"}));
  gen->add_option("--coeffs", coeffs, "Coefficients for correlated, comma separated")->delimiter(',');
  gen->add_option("--parties", parties, "Number of parties")->capture_default_str();
  gen->add_option("--dim", dim, "Local dimension")->capture_default_str();
  gen->add_option("--dims", dims, "Dimensions, comma separated")->delimiter(',');
  gen->add_option("--seed", seed, "Seed for random and product")->capture_default_str();
  gen->add_option("-o,--out", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadFlags;
  }

  try {
    if (dec->parsed()) {
      check_tol(tol, "--tol");
      check_tol(deg_tol, "--deg-tol");
      std::optional<Bipartition> split;
      if (!split_spec.empty()) split = parse_split(split_spec);
      auto [state, ctx] = load(file, "decompose");
      const Bipartition b = split ? *split : Bipartition::single(0, state.parties());
      const auto d = schmidt_decompose(state, b, tol, deg_tol);
      emit(serialize(decompose_report(ctx, d, tol, deg_tol)), out);
      return kExitOk;
    }
    if (gst->parsed()) {
      if (gst_tol->count() == 0) tol = kDefaultMultipartiteTol;
      check_tol(tol, "--tol");
      if (seed_count < 1 || seed_count > 64) throw BadFlags("--seeds must be between 1 and 64");
      if (seed > UINT64_MAX - seed_count) throw BadFlags("--seed too large");
      std::vector<RandomSeed> seeds;
      for (std::uint64_t k = 0; k < seed_count; ++k) seeds.push_back({seed + k});
      auto [state, ctx] = load(file, "schmidt-test");
      const auto r = generalized_schmidt_test(state, tol, seeds);
      emit(serialize(schmidt_test_report(ctx, r, tol)), out);
      return exit_code_for(r.verdict);
    }
    if (pt->parsed()) {
      if (pt_tol->count() == 0) tol = kDefaultMultipartiteTol;
      check_tol(tol, "--tol");
      auto [state, ctx] = load(file, "product-test");
      const auto r = product_test(state, tol);
      emit(serialize(product_test_report(ctx, r, counting_check(state.dims()), tol)), out);
      return exit_code_for(r.verdict);
    }

    std::optional<PureState> s;
    if (kind == "singlet") {
      s = singlet_state();
    } else if (kind == "ghz") {
      s = ghz_state(parties, dim);
    } else if (kind == "w") {
      s = w_state(parties);
    } else if (kind == "correlated") {
      if (coeffs.empty()) throw BadFlags("correlated needs --coeffs");
      const std::vector<Complex> c(coeffs.begin(), coeffs.end());
      s = dims.empty() ? make_correlated_state(c, dim, parties) : make_correlated_state(c, dims);
    } else if (kind == "random") {
      if (dims.empty()) throw BadFlags("random needs --dims");
      s = random_state(dims, {seed});
    } else {
      if (dims.empty()) throw BadFlags("product needs --dims");
      std::vector<ComplexVector> factors;
      for (std::size_t p = 0; p < dims.size(); ++p) {
        const PureState f = random_state({dims[p]}, {seed + p});
        factors.emplace_back(f.amps().begin(), f.amps().end());
      }
      s = product_state(factors);
    }
    emit(state_to_json(*s), out);
    return kExitOk;
  } catch (const BadFlags& e) {
    std::cerr << "schmidtkit: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const Error& e) {
    std::cerr << "schmidtkit: " << e.what() << "\n";
    // gen has no input file, so every rejection there is about its parameters.
    return gen->parsed() ? kExitBadFlags : exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "schmidtkit: internal error: " << e.what() << "\n";
    return 70;
  }
}
