#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "udw/config.hpp"

namespace udw {

enum class SweepVariable { L, M, E, c, x0, alpha_re, alpha_im, omega };
enum class GridScale { linear, log };

SweepVariable sweep_variable_from_string(const std::string& name);
std::string to_string(SweepVariable v);

struct SweepGrid {
  double start = 0.0;
  double stop = 0.0;
  int points = 2;
  GridScale scale = GridScale::linear;
};

/// One parameter sweep: a swept variable on a grid, everything else
/// fixed by config, and a list of rate kinds to evaluate per point.
/// Rate kinds: classical, spont, spont_series, excite (natural units)
/// and hydrogen (SI; swept variable L or omega).
struct SweepSpec {
  SweepVariable variable = SweepVariable::L;
  SweepGrid grid;
  Config fixed_params;
  std::vector<std::string> outputs;
  int jobs = 1;
};

struct SweepResult {
  std::vector<std::string> header;  // column names; fixed across rows
  std::vector<std::vector<double>> rows;
  std::uint64_t config_hash = 0;
};

/// Evaluates the sweep. Grid points may run concurrently (spec.jobs);
/// row order is the grid order, never completion order, so output is
/// byte-identical across thread counts.
SweepResult run_sweep(const SweepSpec& spec);

/// RFC-4180-style CSV: '.' decimal separator, scientific notation with
/// 17 significant digits, first line
///   # udw-delocal v<semver>, config hash <hex>
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv_file(const SweepResult& result, const std::string& path);

/// Inverse of emit_csv; parse(emit(x)) == x.
SweepResult parse_csv(std::istream& in);

bool operator==(const SweepResult& a, const SweepResult& b);

/// Expands the grid to its point values (log grids require positive
/// endpoints; points >= 2; start < stop).
std::vector<double> grid_values(const SweepGrid& grid);

}  // namespace udw
