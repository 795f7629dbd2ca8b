#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "edo/diversity.hpp"
#include "edo/instance.hpp"

namespace edo {

/// n followed by two n x n matrices, free whitespace. The first matrix is
/// stored as the weight matrix until a solution file resolves the order.
QapInstance parse_qaplib_dat(std::string_view text, std::string name = {});

struct SolutionFile {
  int n = 0;
  double objective = 0.0;
  Permutation permutation;  // 0-based, as stored
};

SolutionFile parse_sln_text(std::string_view text);

/// Parses a solution file and resolves the instance's matrix order (and
/// permutation direction) by matching the declared objective exactly.
/// Attaches opt_value and opt_perm to `instance`.
SolutionFile parse_sln(std::string_view text, QapInstance& instance);

/// Reads `<stem>.dat` and, when `sln` is given, resolves it against that file.
QapInstance load_qaplib(const std::filesystem::path& dat,
                        const std::filesystem::path& sln = {});

/// Uniform integer matrices in [0, 100].
QapInstance gen_synthetic_qap(int n, std::uint64_t seed);

/// Uniform integer distances in [1, 100]; symmetric for STSP.
TspInstance gen_synthetic_tsp(int n, bool symmetric, std::uint64_t seed);

/// Header line "n mu kind", then one 1-based permutation per line.
std::string format_population(const Population& population);
Population parse_population(std::string_view text);

Population read_population(const std::filesystem::path& path);
void write_population(const Population& population, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace edo
