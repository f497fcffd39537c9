#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "shearlab/flow.hpp"
#include "shearlab/ratelab.hpp"
#include "shearlab/spectral.hpp"

namespace shearlab {

/// RFC-4180 CSV with a header row; dot decimal, shortest round-trip doubles.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

void write_flow_csv(const std::filesystem::path& path, const FlowSample& flow);
void write_curve_csv(const std::filesystem::path& path, const DecayCurve& curve);
void write_field_csv(const std::filesystem::path& path, const ComplexField& field);
void write_sweep_csv(const std::filesystem::path& path, const SweepTable& table);

/// JSON descriptor {generator, params, seed, n, domain, schema_version}
/// sufficient to regenerate the flow bit-identically.
std::string flow_descriptor_json(const FlowSample& flow);
void write_flow_descriptor(const std::filesystem::path& path, const FlowSample& flow);

/// Rebuild a flow from its descriptor (inverse of flow_descriptor_json).
FlowSample flow_from_descriptor(const std::string& json_text);

std::string fit_result_json(const FitResult& fit);
std::string curve_json(const DecayCurve& curve);
std::string sweep_table_json(const SweepTable& table);

/// FNV-1a 64-bit hash of a canonical string, hex encoded; used as the
/// provenance hash embedded in every artifact.
std::string config_hash(const std::string& canonical);

/// Minimal log-log SVG scatter+line plot of a two-column CSV written by
/// write_curve_csv / write_sweep_csv; no plotting dependency.
void write_loglog_svg(const std::filesystem::path& path, const std::vector<double>& xs,
                      const std::vector<double>& ys, const std::string& title);

double shortest_double(const std::string& s);
std::string format_double(double v);

}  // namespace shearlab
