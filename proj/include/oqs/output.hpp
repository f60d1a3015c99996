#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oqs/composite.hpp"
#include "oqs/params.hpp"
#include "oqs/state.hpp"

namespace oqs::trajio {

struct ParsOutput {
  std::string o;            // output file; empty = stdout
  bool resume = true;       // pick up a matching .sv next to the output file
  double checkpoint = 0;    // mid-run .sv interval; 0 = only on completion

  ParsOutput() = default;
  explicit ParsOutput(ParameterTable& p);
};

struct DisplayRow {
  double t = 0;
  double dtDid = 0;
  std::vector<double> values;  // flattened block values
  std::optional<double> jumpProximity;
  std::optional<double> negativity;
};

class RowSink {
public:
  virtual ~RowSink() = default;
  virtual void writeRow(const DisplayRow& row) = 0;
};

// "t dtDid<TAB>block<TAB>block..." with 6 significant digits; the optional
// jump-proximity and negativity fields are tab-separated at the end, the
// negativity always last.
class TextWriter final : public RowSink {
public:
  TextWriter(std::ostream& out, std::vector<int> blockArities);
  void writeRow(const DisplayRow& row) override;

private:
  std::ostream* out_;
  std::vector<int> blockArities_;
};

void writeHeader(std::ostream& out, const QuantumSystem& system,
                 const ParameterTable* table, bool jumpColumn, bool negativityColumn);

std::vector<int> blockArities(const QuantumSystem& system);

// Binary trajectory snapshot. Layout (little-endian): 8-byte magic
// "CQEDSV01", u32 rank, u32 dims[rank], f64 t, 2xf64 amplitudes in row-major
// order, u32 blob length + blob bytes, f64 stepper stepsize. The blob starts
// with a one-byte trajectory kind tag; MCWF trajectories append their RNG
// stream.
struct SavedState {
  std::vector<std::uint32_t> dims;
  double t = 0;
  std::vector<complex> amplitudes;
  std::string blob;
  double stepperDt = 0;

  char kind() const { return blob.empty() ? '?' : blob[0]; }
};

inline constexpr char kKindSingle = 'S';
inline constexpr char kKindMaster = 'M';

void saveState(const SavedState& s, const std::string& path);
SavedState loadState(const std::string& path);

}  // namespace oqs::trajio
