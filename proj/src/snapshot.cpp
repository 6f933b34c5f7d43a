#include "oldroyd/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "oldroyd/errors.hpp"

namespace oldroyd {
namespace {

constexpr const char* kMagic = "OLDROYD2D-SNAPSHOT 1";

void put_le(std::ostream& os, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_le(std::istream& is) {
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char*>(bytes), 8)) {
    throw SchemaError("snapshot payload is truncated");
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const ScalarField& Snapshot::component(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return components[i];
  }
  throw ContractError("snapshot has no component named '" + name + "'");
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap,
                    Representation rep) {
  if (snap.names.size() != snap.components.size()) {
    throw ContractError("snapshot names and components differ in length");
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open snapshot for writing: " + path.string());
  os << kMagic << '\n';
  os << "n=" << snap.grid.n << '\n';
  os << "L=" << format_double(snap.grid.box_length) << '\n';
  os << "dealias_fraction=" << format_double(snap.grid.dealias_fraction) << '\n';
  os << "representation=" << to_string(rep) << '\n';
  os << "components=";
  for (std::size_t i = 0; i < snap.names.size(); ++i) os << (i ? "," : "") << snap.names[i];
  os << '\n';
  os << "endianness=little\n";
  os << "t=" << format_double(snap.t) << '\n';
  os << "end_header\n";
  for (const ScalarField& c : snap.components) {
    if (rep == Representation::real) {
      const ScalarField r = as_real(c);
      for (double v : r.real()) put_le(os, v);
    } else {
      const ScalarField s = as_spectral(c);
      for (Complex z : s.spectral()) {
        put_le(os, z.real());
        put_le(os, z.imag());
      }
    }
  }
  if (!os) throw std::runtime_error("failed writing snapshot: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open snapshot: " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != kMagic) {
    throw SchemaError("not a snapshot file: " + path.string());
  }
  std::map<std::string, std::string> header;
  while (std::getline(is, line) && line != "end_header") {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw SchemaError("malformed snapshot header line: " + line);
    header[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (line != "end_header") throw SchemaError("snapshot header is not terminated");
  for (const char* key : {"n", "L", "representation", "components", "endianness"}) {
    if (!header.count(key)) throw SchemaError(std::string("snapshot header lacks '") + key + "'");
  }
  if (header["endianness"] != "little") throw SchemaError("unsupported endianness");

  Snapshot snap;
  snap.grid.n = std::stoi(header["n"]);
  snap.grid.box_length = std::stod(header["L"]);
  if (header.count("dealias_fraction")) snap.grid.dealias_fraction = std::stod(header["dealias_fraction"]);
  if (header.count("t")) snap.t = std::stod(header["t"]);
  snap.grid.validate();

  std::stringstream names(header["components"]);
  for (std::string name; std::getline(names, name, ',');) {
    if (!name.empty()) snap.names.push_back(name);
  }
  const std::string rep = header["representation"];
  for (std::size_t c = 0; c < snap.names.size(); ++c) {
    if (rep == "real") {
      ScalarField f(snap.grid, Representation::real);
      for (double& v : f.real()) v = get_le(is);
      snap.components.push_back(std::move(f));
    } else if (rep == "spectral") {
      ScalarField f(snap.grid, Representation::spectral);
      for (Complex& z : f.spectral()) {
        const double re = get_le(is);
        const double im = get_le(is);
        z = {re, im};
      }
      snap.components.push_back(std::move(f));
    } else {
      throw SchemaError("unknown representation '" + rep + "'");
    }
  }
  return snap;
}

}  // namespace oldroyd
