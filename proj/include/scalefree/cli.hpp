#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace scalefree {
namespace cli {

using Cell = std::variant<double, std::int64_t, std::uint64_t, std::string>;

/// One experiment's output: provenance pairs plus a rectangular table.
/// Serialization is byte-stable: fixed key order, shortest round-trip number
/// formatting, '\n' line ends.
struct Table {
  std::vector<std::pair<std::string, Cell>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_cell(const Cell& cell);
std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// Entry point behind the sflab binary. Exit codes: 0 success, 2 usage
/// error, 3 numerical non-convergence (partial output is still written).
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace cli
}  // namespace scalefree
