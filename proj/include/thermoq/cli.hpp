#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "thermoq/analysis.hpp"

namespace thermoq {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

enum class OutputFormat { Csv, Json };

// Emit one figure preset into out_dir (created if missing). CSV mode writes
// one file per curve plus a metadata sidecar; JSON mode writes a single
// file holding every curve. Returns the paths written.
std::vector<std::filesystem::path> write_figure_files(const std::string& panel,
                                                      const FigureParams& params,
                                                      const std::filesystem::path& out_dir,
                                                      OutputFormat format);

// Entry point behind main(): parses argv, dispatches, maps errors to exit
// codes (0 ok, 1 verification failure, 2 usage/domain, 3 I/O).
int run_cli(int argc, const char* const* argv);

} // namespace thermoq
