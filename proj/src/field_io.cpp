#include "ueq/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ueq::io {

namespace {

constexpr int kSchema = 1;

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffU) << (8 * (7 - i));
    return r;
  }
  return v;
}

void put_double(std::ostream& os, double d) {
  const std::uint64_t v = to_little_endian(std::bit_cast<std::uint64_t>(d));
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

double get_double(std::istream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw std::runtime_error("field payload truncated");
  return std::bit_cast<double>(to_little_endian(v));
}

}  // namespace

nlohmann::json grid_to_json(const grid::GridSpec& g) {
  return {{"n", g.dim}, {"N", g.points}, {"L", g.half_width}, {"offset", g.offset}, {"scheme", grid::to_string(g.scheme)}};
}

grid::GridSpec grid_from_json(const nlohmann::json& j) {
  grid::GridSpec g;
  g.dim = j.at("n").get<int>();
  g.points = j.at("N").get<int>();
  g.half_width = j.at("L").get<double>();
  g.offset = j.value("offset", 0.5);
  g.scheme = grid::parse_scheme(j.value("scheme", std::string("spectral_periodic")));
  g.validate();
  return g;
}

void export_field(const grid::StateField& f, const std::filesystem::path& stem, Encoding enc) {
  const bool binary = enc == Encoding::binary;
  std::filesystem::path payload = stem;
  payload += binary ? ".bin" : ".csv";
  std::filesystem::path header = stem;
  header += ".json";

  nlohmann::json h = {{"schema", kSchema},
                      {"grid", grid_to_json(f.grid())},
                      {"encoding", binary ? "binary" : "csv"},
                      {"order", "axis0_fastest"},
                      {"count", f.size()},
                      {"payload", payload.filename().string()}};
  {
    std::ofstream os(header);
    if (!os) throw std::runtime_error("cannot write " + header.string());
    os << h.dump(2) << '\n';
  }
  if (binary) {
    std::ofstream os(payload, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + payload.string());
    for (const cx& z : f.values()) {
      put_double(os, z.real());
      put_double(os, z.imag());
    }
  } else {
    std::ofstream os(payload);
    if (!os) throw std::runtime_error("cannot write " + payload.string());
    os << "index,re,im\n";
    char buf[96];
    const auto v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, v[i].real(), v[i].imag());
      os << buf;
    }
  }
}

grid::StateField import_field(const std::filesystem::path& header) {
  std::ifstream is(header);
  if (!is) throw std::runtime_error("cannot read " + header.string());
  const nlohmann::json h = nlohmann::json::parse(is);
  if (h.value("schema", 0) != kSchema) throw std::runtime_error("unsupported field schema");
  const grid::GridSpec g = grid_from_json(h.at("grid"));
  const auto count = h.at("count").get<std::size_t>();
  if (count != g.size()) throw std::runtime_error("field header count does not match the grid");
  const auto payload = header.parent_path() / h.at("payload").get<std::string>();
  std::vector<cx> values(count);
  if (h.at("encoding") == "binary") {
    std::ifstream ps(payload, std::ios::binary);
    if (!ps) throw std::runtime_error("cannot read " + payload.string());
    for (auto& z : values) {
      const double re = get_double(ps);
      const double im = get_double(ps);
      z = {re, im};
    }
  } else if (h.at("encoding") == "csv") {
    std::ifstream ps(payload);
    if (!ps) throw std::runtime_error("cannot read " + payload.string());
    std::string line;
    std::getline(ps, line);  // header row
    std::size_t seen = 0;
    while (std::getline(ps, line)) {
      if (line.empty()) continue;
      std::size_t idx = 0;
      double re = 0.0, im = 0.0;
      if (std::sscanf(line.c_str(), "%zu,%lf,%lf", &idx, &re, &im) != 3 || idx >= count) {
        throw std::runtime_error("malformed field row: " + line);
      }
      values[idx] = {re, im};
      ++seen;
    }
    if (seen != count) throw std::runtime_error("field payload has the wrong number of rows");
  } else {
    throw std::runtime_error("unknown field encoding");
  }
  return grid::StateField(g, std::move(values));
}

}  // namespace ueq::io
