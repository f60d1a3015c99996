#include "oqs/output.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace oqs::trajio {

namespace {

constexpr char kMagic[8] = {'C', 'Q', 'E', 'D', 'S', 'V', '0', '1'};

std::string sig6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

template <class T>
void writeRaw(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
void readRaw(std::istream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("corrupt sv file");
}

}  // namespace

ParsOutput::ParsOutput(ParameterTable& p) {
  p.add("o", "output file (stdout when empty); final state goes to <file>.sv", o);
  p.add("resume", "continue from a matching .sv next to the output file", resume);
  p.add("checkpoint", "interval for mid-run .sv snapshots (0 = off)", checkpoint);
}

TextWriter::TextWriter(std::ostream& out, std::vector<int> arities)
    : out_(&out), blockArities_(std::move(arities)) {}

void TextWriter::writeRow(const DisplayRow& row) {
  std::ostream& out = *out_;
  out << sig6(row.t) << ' ' << sig6(row.dtDid);
  std::size_t i = 0;
  for (int arity : blockArities_) {
    out << '\t';
    for (int k = 0; k < arity; ++k, ++i) {
      if (k) out << ' ';
      out << sig6(i < row.values.size() ? row.values[i] : 0.0);
    }
  }
  if (row.jumpProximity) out << '\t' << sig6(*row.jumpProximity);
  if (row.negativity) out << '\t' << sig6(*row.negativity);
  out << '\n';
}

std::vector<int> blockArities(const QuantumSystem& system) {
  std::vector<int> arities;
  for (const DisplayBlock& b : system.displayBlocks())
    arities.push_back(static_cast<int>(b.key.size()));
  return arities;
}

void writeHeader(std::ostream& out, const QuantumSystem& system,
                 const ParameterTable* table, bool jumpColumn, bool negativityColumn) {
  out << "# oqsim 0.1.0\n";
  if (table) {
    out << "# parameters:\n";
    table->dump(out, "#   ");
  }
  out << "# display key:\n";
  out << "#   column 1: t\n";
  out << "#   column 2: dtDid\n";
  int col = 3;
  for (const DisplayBlock& b : system.displayBlocks()) {
    const int n = static_cast<int>(b.key.size());
    out << "#   column" << (n > 1 ? "s " : " ") << col;
    if (n > 1) out << ".." << col + n - 1;
    out << ": " << b.label << ":";
    for (const std::string& k : b.key) out << ' ' << k;
    out << "\n";
    col += n;
  }
  if (jumpColumn) out << "#   column " << col++ << ": jump proximity (negative = jump)\n";
  if (negativityColumn) out << "#   column " << col++ << ": negativity\n";
}

void saveState(const SavedState& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write sv file: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t rank = static_cast<std::uint32_t>(s.dims.size());
  writeRaw(out, rank);
  for (std::uint32_t d : s.dims) writeRaw(out, d);
  writeRaw(out, s.t);
  for (const complex& a : s.amplitudes) {
    writeRaw(out, a.real());
    writeRaw(out, a.imag());
  }
  const std::uint32_t blobLen = static_cast<std::uint32_t>(s.blob.size());
  writeRaw(out, blobLen);
  out.write(s.blob.data(), static_cast<std::streamsize>(s.blob.size()));
  writeRaw(out, s.stepperDt);
  if (!out) throw std::runtime_error("cannot write sv file: " + path);
}

SavedState loadState(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read sv file: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("corrupt sv file");

  SavedState s;
  std::uint32_t rank = 0;
  readRaw(in, rank);
  if (rank == 0 || rank > 2 * static_cast<std::uint32_t>(kMaxRank))
    throw std::runtime_error("corrupt sv file");
  s.dims.resize(rank);
  std::size_t total = 1;
  for (auto& d : s.dims) {
    readRaw(in, d);
    if (d == 0) throw std::runtime_error("corrupt sv file");
    total *= d;
  }
  readRaw(in, s.t);
  s.amplitudes.resize(total);
  for (complex& a : s.amplitudes) {
    double re = 0, im = 0;
    readRaw(in, re);
    readRaw(in, im);
    a = complex{re, im};
  }
  std::uint32_t blobLen = 0;
  readRaw(in, blobLen);
  s.blob.resize(blobLen);
  in.read(s.blob.data(), blobLen);
  if (!in) throw std::runtime_error("corrupt sv file");
  readRaw(in, s.stepperDt);
  return s;
}

}  // namespace oqs::trajio
