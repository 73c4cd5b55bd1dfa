#pragma once

#include "mbl/experiments.hpp"
#include "mbl/manifest.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace mbl {

/// `x,u,t` rows, one per node per snapshot, 17 significant digits, LF endings.
std::string snapshots_csv(const GridSpec& grid, std::span<const Field> snapshots);

/// Writes manifest.json and, for a non-empty run, snapshots.csv and plot_snapshots.py
/// into m.output_dir. Returns the directory.
std::filesystem::path export_run(const RunManifest& m, const RunOutput* run, bool plot_script = true);

/// Writes text to a file, creating parent directories. Throws IoError.
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace mbl
