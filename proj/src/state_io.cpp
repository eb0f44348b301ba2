#include "schmidtkit/state_io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "schmidtkit/error.hpp"

namespace schmidtkit {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

double finite_number(const json& v, const char* what) {
  if (!v.is_number()) malformed(std::string(what) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) malformed(std::string(what) + " is not finite");
  return x;
}

}  // namespace

PureState parse_state_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    malformed(e.what());
  }
  if (!doc.is_object()) malformed("state file must hold a JSON object");
  if (!doc.contains("dims") || !doc.contains("amps")) malformed("state file needs \"dims\" and \"amps\"");

  const json& jd = doc["dims"];
  if (!jd.is_array() || jd.empty()) malformed("\"dims\" must be a nonempty array");
  std::vector<std::size_t> dims;
  std::size_t total = 1;
  for (const auto& d : jd) {
    if (!d.is_number_unsigned() || d.get<std::uint64_t>() == 0) malformed("dimensions must be positive integers");
    const auto v = d.get<std::uint64_t>();
    if (v > kMaxStateSize || total * v > kMaxStateSize) malformed("state exceeds the supported size");
    total *= v;
    dims.push_back(static_cast<std::size_t>(v));
  }

  const json& ja = doc["amps"];
  if (!ja.is_array()) malformed("\"amps\" must be an array");
  if (ja.size() != total)
    malformed("expected " + std::to_string(total) + " amplitudes, found " + std::to_string(ja.size()));
  std::vector<Complex> amps;
  amps.reserve(total);
  for (const auto& a : ja) {
    if (!a.is_array() || a.size() != 2) malformed("each amplitude must be a [re, im] pair");
    amps.emplace_back(finite_number(a[0], "re"), finite_number(a[1], "im"));
  }
  return normalize(amps, std::move(dims));
}

std::string state_to_json(const PureState& state) {
  nlohmann::ordered_json doc;
  doc["dims"] = state.dims();
  auto amps = nlohmann::ordered_json::array();
  for (const auto& z : state.amps()) amps.push_back({z.real(), z.imag()});
  doc["amps"] = std::move(amps);
  return doc.dump() + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

}  // namespace schmidtkit
