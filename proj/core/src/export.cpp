#include "mbl/export.hpp"

#include "mbl/errors.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace mbl {

namespace {

void append_g17(std::string& out, double v)
{
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, std::size_t(n));
}

constexpr const char* kPlotScript = R"(import csv
import sys
from collections import defaultdict

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "snapshots.csv"
series = defaultdict(lambda: ([], []))
with open(path) as fh:
    for row in csv.DictReader(fh):
        xs, us = series[float(row["t"])]
        xs.append(float(row["x"]))
        us.append(float(row["u"]))
for t in sorted(series):
    xs, us = series[t]
    plt.plot(xs, us, label=f"t = {t:g}")
plt.xlabel("x")
plt.ylabel("u")
plt.legend()
plt.savefig(path.replace(".csv", ".png"), dpi=150)
)";

} // namespace

std::string snapshots_csv(const GridSpec& grid, std::span<const Field> snapshots)
{
    std::string out = "x,u,t\n";
    for (const auto& f : snapshots) {
        for (std::size_t j = 0; j < f.values.size(); ++j) {
            append_g17(out, grid.node(int(j)));
            out.push_back(',');
            append_g17(out, f.values[j]);
            out.push_back(',');
            append_g17(out, f.time);
            out.push_back('\n');
        }
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
        throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << text;
    if (!out)
        throw IoError("write failed for " + path.string());
}

std::filesystem::path export_run(const RunManifest& m, const RunOutput* run, bool plot_script)
{
    const std::filesystem::path dir(m.output_dir);
    write_text(dir / "manifest.json", manifest_to_json(m) + "\n");
    if (run && !run->snapshots.empty()) {
        write_text(dir / "snapshots.csv", snapshots_csv(run->grid, run->snapshots));
        if (plot_script)
            write_text(dir / "plot_snapshots.py", kPlotScript);
    }
    return dir;
}

} // namespace mbl
