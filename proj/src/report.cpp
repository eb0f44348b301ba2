#include "schmidtkit/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "schmidtkit/error.hpp"

namespace schmidtkit {

namespace {

Report complex_vector(std::span<const Complex> v) {
  auto out = Report::array();
  for (const auto& z : v) out.push_back({z.real() + 0.0, z.imag() + 0.0});  // no negative zeros
  return out;
}

Report split_json(const Bipartition& s) { return Report{{"left", s.left}, {"right", s.right}}; }

Report header(const ReportContext& ctx) {
  Report r;
  r["schema_version"] = kReportSchemaVersion;
  r["tool"] = {{"name", "schmidtkit"}, {"version", SCHMIDTKIT_VERSION}};
  r["command"] = ctx.command;
  r["input"] = {{"sha256", ctx.digest}, {"dims", ctx.dims}};
  return r;
}

std::vector<std::size_t> parse_parties(std::string_view side) {
  std::vector<std::size_t> out;
  if (side.empty()) throw Error(ErrorKind::InvalidArgument, "empty side in split");
  std::size_t pos = 0;
  while (pos <= side.size()) {
    const std::size_t end = std::min(side.find(',', pos), side.size());
    const std::string_view tok = side.substr(pos, end - pos);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw Error(ErrorKind::InvalidArgument, "bad party index '" + std::string(tok) + "'");
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

void check_finite(const Report& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) throw std::logic_error("non-finite value in report");
  if (j.is_structured())
    for (const auto& child : j) check_finite(child);
}

}  // namespace

Bipartition parse_split(std::string_view spec) {
  const std::size_t bar = spec.find('|');
  if (bar == std::string_view::npos || spec.find('|', bar + 1) != std::string_view::npos)
    throw Error(ErrorKind::InvalidArgument, "split must look like L|R, e.g. 0,1|2");
  return Bipartition{parse_parties(spec.substr(0, bar)), parse_parties(spec.substr(bar + 1))};
}

std::string format_split(const Bipartition& split) {
  auto side = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  return side(split.left) + "|" + side(split.right);
}

Report decompose_report(const ReportContext& ctx, const SchmidtDecomposition& d, double tol, double deg_tol) {
  Report r = header(ctx);
  r["tolerances"] = {{"rank", tol}, {"degeneracy", deg_tol}};
  r["seeds"] = Report::array();

  const DegeneracyReport deg = degeneracy_report(d, deg_tol);
  const double nats = entanglement_entropy(d);

  Report groups = Report::array();
  std::vector<bool> canonical(d.rank(), true);
  for (std::size_t g = 0; g < deg.groups.size(); ++g) {
    const auto& grp = deg.groups[g];
    groups.push_back({{"indices", grp.indices}, {"weight", grp.weight}, {"unitary_freedom", deg.unitary_freedom[g]}});
    if (grp.size() > 1)
      for (auto i : grp.indices) canonical[i] = false;
  }

  Report terms = Report::array();
  for (std::size_t i = 0; i < d.rank(); ++i)
    terms.push_back({{"weight", d.weights[i]},
                     {"canonical", static_cast<bool>(canonical[i])},
                     {"left", complex_vector(d.left_vectors[i])},
                     {"right", complex_vector(d.right_vectors[i])}});

  r["result"] = {
      {"kind", "bipartite"},
      {"split", split_json(d.split)},
      {"rank", d.rank()},
      {"weights", d.weights},
      {"entropy_nats", nats},
      {"entropy_bits", nats_to_bits(nats)},
      {"degeneracy",
       {{"groups", std::move(groups)}, {"unique_up_to_phases", deg.unique_up_to_phases}}},
      {"zero_space", {{"left_dim", deg.left_zero_dim}, {"right_dim", deg.right_zero_dim}}},
      {"terms", std::move(terms)},
  };
  return r;
}

Report schmidt_test_report(const ReportContext& ctx, const GeneralizedSchmidtResult& res, double tol) {
  Report r = header(ctx);
  r["tolerances"] = {{"multipartite", tol}};
  auto seeds = Report::array();
  for (const auto& s : res.seeds_used) seeds.push_back(s.value);
  r["seeds"] = std::move(seeds);

  Report result;
  result["kind"] = "generalized_schmidt";
  result["verdict"] = to_string(res.verdict);
  if (res.verdict == SchmidtVerdict::Exists) {
    result["weights"] = res.weights;
    auto bases = Report::array();
    for (const auto& party : res.party_bases) {
      auto vs = Report::array();
      for (const auto& v : party) vs.push_back(complex_vector(v));
      bases.push_back(std::move(vs));
    }
    result["party_bases"] = std::move(bases);
    result["residual"] = res.residual;
  }
  if (res.witness) {
    const auto& w = *res.witness;
    Report jw{{"kind", to_string(w.kind)},
              {"split", split_json(w.split)},
              {"weight_index", w.weight_index},
              {"magnitude", w.magnitude}};
    if (w.rank) jw["rank"] = *w.rank;
    result["witness"] = std::move(jw);
  }
  r["result"] = std::move(result);
  return r;
}

Report product_test_report(const ReportContext& ctx, const ProductTestResult& res, const CountingRecord& counts,
                           double tol) {
  Report r = header(ctx);
  r["tolerances"] = {{"multipartite", tol}};
  r["seeds"] = Report::array();

  Report result;
  result["kind"] = "product";
  result["verdict"] = to_string(res.verdict);
  if (res.verdict == ProductVerdict::IsProduct) {
    auto fs = Report::array();
    for (const auto& f : res.factors) fs.push_back(complex_vector(f));
    result["factors"] = std::move(fs);
    result["residual"] = res.residual;
  }
  if (res.witness) result["witness"] = {{"split", split_json(res.witness->split)}, {"rank", res.witness->rank}};
  result["counting"] = {
      {"unknowns", counts.unknowns}, {"equations", counts.equations}, {"overdetermined", counts.overdetermined}};
  r["result"] = std::move(result);
  return r;
}

int exit_code_for(SchmidtVerdict v) {
  switch (v) {
    case SchmidtVerdict::Exists:
      return kExitOk;
    case SchmidtVerdict::NotExists:
      return kExitNegative;
    case SchmidtVerdict::Indeterminate:
      return kExitIndeterminate;
  }
  return kExitIndeterminate;
}

int exit_code_for(ProductVerdict v) { return v == ProductVerdict::IsProduct ? kExitOk : kExitNegative; }

std::string serialize(const Report& report) {
  check_finite(report);
  return report.dump(2) + "\n";
}

}  // namespace schmidtkit
