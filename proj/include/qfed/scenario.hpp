#pragma once

#include "qfed/fieldquants.hpp"
#include "qfed/stack.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qfed {

enum class KUnit { k0, per_nm };

/// Quantity names accepted in [quantities].
const std::vector<std::string>& known_quantities();

struct Scenario
{
    std::string source; // verbatim text, echoed into the metadata
    std::map<std::string, MaterialModel> materials;
    std::map<std::string, ExcitationRule> excitations;
    std::optional<LayerStack> stack;
    /// Empty when no layer names an excitation (LDOS-only runs).
    std::optional<ExcitationProfile> profile;

    std::vector<double> z;      // nm
    std::vector<double> k;      // in k_unit
    KUnit k_unit = KUnit::k0;
    std::vector<double> energy; // eV

    std::vector<std::string> quantities;
    Numerics numerics;
    unsigned threads = 0; // 0: hardware concurrency

    /// In-plane wavenumber in nm^-1 for grid index ik at photon energy e.
    double K_at(std::size_t ik, double e) const;
};

/// Parses and validates; throws ValidationError listing every problem with its line.
/// Relative table paths are resolved against base_dir, then the bundled data.
Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

enum class DemoCase { thermal, biased };
Scenario demo_scenario(DemoCase which);

/// Bundled data file contents by file name, if present.
std::optional<std::string> bundled_file(const std::string& name);

struct SampleIssue
{
    double z = 0.0, K = 0.0, energy = 0.0;
    std::string message;
};

struct ResultGrid
{
    std::string scenario_source;
    std::vector<double> z, k, energy; // k in k_unit
    KUnit k_unit = KUnit::k0;
    std::vector<std::string> quantities;
    /// Per quantity, values indexed [energy][z][k].
    std::map<std::string, std::vector<double>> values;
    double loss_floor = 0.0;
    bool floor_applied = false;
    std::vector<SampleIssue> nudged;  // one entry per (K, energy) column
    std::vector<SampleIssue> aborted; // one entry per failed sample

    std::size_t index(std::size_t ie, std::size_t iz, std::size_t ik) const
    {
        return (ie * z.size() + iz) * k.size() + ik;
    }
};

/// Evaluates every requested quantity on the grid. Sample failures are recorded,
/// their values set to 0. threads = 0 uses the scenario setting.
ResultGrid run(const Scenario& scenario, unsigned threads = 0);

/// Writes metadata.json plus one <quantity>.tsv per output; with render, also
/// <quantity>.ppm heat maps. Returns the files written. Throws Error on I/O failure.
std::vector<std::filesystem::path> write_results(const ResultGrid& grid,
                                                 const std::filesystem::path& dir,
                                                 bool render = false);

inline const char* tool_version = "0.3.0";

} // namespace qfed
