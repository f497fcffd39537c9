#include "shearlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace shearlab {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

double shortest_double(const std::string& s) {
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string());
    for (std::size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 < header.size() ? "," : "\r\n");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << format_double(columns[c][r]) << (c + 1 < columns.size() ? "," : "\r\n");
    }
}

void write_flow_csv(const std::filesystem::path& path, const FlowSample& flow) {
    std::vector<double> ys(flow.grid().size());
    for (std::size_t j = 0; j < ys.size(); ++j) ys[j] = flow.grid().point(j);
    write_csv(path, {"y", "u"}, {ys, flow.values()});
}

void write_curve_csv(const std::filesystem::path& path, const DecayCurve& curve) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string());
    out << "abscissa,ordinate,label\r\n";
    for (std::size_t i = 0; i < curve.abscissae.size(); ++i)
        out << format_double(curve.abscissae[i]) << "," << format_double(curve.ordinates[i])
            << "," << curve.label << "\r\n";
}

void write_field_csv(const std::filesystem::path& path, const ComplexField& field) {
    std::vector<double> ys(field.grid().size()), re(field.grid().size()),
        im(field.grid().size());
    for (std::size_t j = 0; j < ys.size(); ++j) {
        ys[j] = field.grid().point(j);
        re[j] = field.values()[j].real();
        im[j] = field.values()[j].imag();
    }
    write_csv(path, {"y", "re_g", "im_g"}, {ys, re, im});
}

void write_sweep_csv(const std::filesystem::path& path, const SweepTable& table) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string());
    out << table.axis << ",value,valid,note\r\n";
    for (const auto& row : table.rows)
        out << format_double(row.parameter) << "," << format_double(row.value) << ","
            << (row.valid ? 1 : 0) << "," << row.note << "\r\n";
}

std::string flow_descriptor_json(const FlowSample& flow) {
    json j;
    j["schema_version"] = 1;
    j["generator"] = flow.meta().generator;
    json params = json::object();
    for (const auto& [k, v] : flow.meta().params) params[k] = v;
    j["params"] = params;
    if (flow.meta().seed) {
        j["seed"] = flow.meta().seed->seed;
        j["stream"] = flow.meta().seed->stream;
    }
    j["n"] = flow.grid().size();
    j["domain"] = to_string(flow.grid().domain());
    return j.dump(2);
}

void write_flow_descriptor(const std::filesystem::path& path, const FlowSample& flow) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string());
    out << flow_descriptor_json(flow) << "\n";
}

FlowSample flow_from_descriptor(const std::string& json_text) {
    const json j = json::parse(json_text);
    const std::string gen = j.at("generator").get<std::string>();
    const std::size_t n = j.at("n").get<std::size_t>();
    const Domain dom = domain_from_string(j.at("domain").get<std::string>());
    Grid1D grid(n, dom);
    const auto& params = j.at("params");

    const auto get = [&](const char* key) { return params.at(key).get<double>(); };

    if (gen == "weierstrass")
        return weierstrass(get("alpha"), static_cast<int>(get("lambda")),
                           static_cast<int>(get("n_terms")), grid);
    if (gen == "fbm") {
        RandomSeed seed{j.at("seed").get<std::uint64_t>(),
                        j.value("stream", std::uint64_t{0})};
        return sample_fbm(get("hurst"), grid, seed);
    }
    if (gen == "symmetrized_fbm") {
        RandomSeed seed{j.at("seed").get<std::uint64_t>(),
                        j.value("stream", std::uint64_t{0})};
        Grid1D half(n / 2, Domain::Interval);
        return symmetrize(sample_fbm(get("hurst"), half, seed));
    }
    if (gen == "constant")
        return analytic_flow({AnalyticKind::Constant, get("c"), 1, {}}, grid);
    if (gen == "linear") return analytic_flow({AnalyticKind::Linear, 0.0, 1, {}}, grid);
    if (gen == "sine")
        return analytic_flow({AnalyticKind::Sine, 0.0, static_cast<int>(get("k0")), {}}, grid);
    throw BadParameter("flow_from_descriptor: unknown generator " + gen);
}

std::string fit_result_json(const FitResult& fit) {
    json j;
    j["exponent"] = fit.exponent;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    j["window"] = {fit.window_min, fit.window_max};
    j["n_points"] = fit.n_points;
    return j.dump(2);
}

std::string curve_json(const DecayCurve& curve) {
    json j;
    j["label"] = curve.label;
    j["abscissae"] = curve.abscissae;
    j["ordinates"] = curve.ordinates;
    return j.dump(2);
}

std::string sweep_table_json(const SweepTable& table) {
    json j;
    j["axis"] = table.axis;
    j["provenance"] = table.provenance;
    json rows = json::array();
    for (const auto& row : table.rows)
        rows.push_back({{"parameter", row.parameter},
                        {"value", row.value},
                        {"valid", row.valid},
                        {"note", row.note}});
    j["rows"] = rows;
    return j.dump(2);
}

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

void write_loglog_svg(const std::filesystem::path& path, const std::vector<double>& xs,
                      const std::vector<double>& ys, const std::string& title) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw BadParameter("write_loglog_svg: need matching xs/ys with >= 2 points");
    const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    double lx0 = std::log10(xs.front()), lx1 = lx0, ly0 = 0, ly1 = 0;
    bool first = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
        const double lx = std::log10(xs[i]), ly = std::log10(ys[i]);
        if (first) {
            lx0 = lx1 = lx;
            ly0 = ly1 = ly;
            first = false;
        }
        lx0 = std::min(lx0, lx);
        lx1 = std::max(lx1, lx);
        ly0 = std::min(ly0, ly);
        ly1 = std::max(ly1, ly);
    }
    if (first) throw BadParameter("write_loglog_svg: no positive points");
    if (lx1 == lx0) lx1 = lx0 + 1;
    if (ly1 == ly0) ly1 = ly0 + 1;
    const auto px = [&](double lx) { return ml + (lx - lx0) / (lx1 - lx0) * (W - ml - mr); };
    const auto py = [&](double ly) { return H - mb - (ly - ly0) / (ly1 - ly0) * (H - mt - mb); };

    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string());
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";
    out << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    // decade ticks
    for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d)
        out << "<text x='" << px(d) << "' y='" << H - mb + 18
            << "' text-anchor='middle' font-size='11'>1e" << d << "</text>\n";
    for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d)
        out << "<text x='" << ml - 8 << "' y='" << py(d) + 4
            << "' text-anchor='end' font-size='11'>1e" << d << "</text>\n";
    out << "<polyline fill='none' stroke='#1f77b4' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
        out << px(std::log10(xs[i])) << "," << py(std::log10(ys[i])) << " ";
    }
    out << "'/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
        out << "<circle cx='" << px(std::log10(xs[i])) << "' cy='" << py(std::log10(ys[i]))
            << "' r='2.5' fill='#1f77b4'/>\n";
    }
    out << "</svg>\n";
}

}  // namespace shearlab
