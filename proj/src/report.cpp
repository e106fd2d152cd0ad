//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "socperf/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <sstream>

#include <json.hpp>

#include "socperf/error.hpp"

namespace socperf {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Format format) {
    switch (format) {
        case Format::Csv: return "csv";
        case Format::Json: return "json";
        case Format::Svg: return "svg";
    }
    return "?";
}

Format parse_format(std::string_view text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    if (text == "svg") return Format::Svg;
    throw Error(ErrorCode::UnsupportedFormat, "unknown format '" + std::string(text) + "'");
}

namespace {

// Power of ten of the leading digit: 98765 -> 4, 0.00012 -> -4.
int decimal_exponent(double magnitude) {
    int e = static_cast<int>(std::floor(std::log10(magnitude)));
    if (magnitude >= std::pow(10.0, e + 1)) ++e;
    if (magnitude < std::pow(10.0, e)) --e;
    return e;
}

// Halves round away from zero (98765 -> 98770), unlike printf's
// round-half-even on exactly representable ties. Dividing by an exact power
// of ten keeps those ties exact.
double round_to_sig4(double value, int& exponent) {
    exponent = decimal_exponent(std::abs(value));
    const int shift = 3 - exponent;
    double r = shift >= 0 ? std::round(value * std::pow(10.0, shift)) / std::pow(10.0, shift)
                          : std::round(value / std::pow(10.0, -shift)) * std::pow(10.0, -shift);
    exponent = decimal_exponent(std::abs(r));
    return r;
}

}  // namespace

std::string format_sig4(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";
    int exponent = 0;
    const double r = round_to_sig4(value, exponent);
    char out[400];
    std::snprintf(out, sizeof(out), "%.*f", std::max(0, 3 - exponent), r);
    return out;
}

double round_sig4(double value) {
    if (!std::isfinite(value) || value == 0.0) return value;
    int exponent = 0;
    return round_to_sig4(value, exponent);
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return csv_escape(*s);
    if (const auto* d = std::get_if<double>(&cell)) return format_sig4(*d);
    return std::to_string(std::get<std::int64_t>(cell));
}

ordered_json cell_json(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* d = std::get_if<double>(&cell)) return round_sig4(*d);
    return std::get<std::int64_t>(cell);
}

std::string join_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + csv_escape(table.header[i]);
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += '\n';
    }
    return out;
}

std::string join_json(const Table& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj;
        for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) obj[table.header[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Log-log roofline plot.
std::string render_svg(const std::vector<SeriesRow>& series, const RooflineModel& model) {
    constexpr double kWidth = 720, kHeight = 480, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
    double x_lo = series.front().oi, x_hi = series.back().oi;
    double y_lo = series.front().roofline_gops, y_hi = model.ceiling_gops;
    for (const auto& r : series) {
        y_lo = std::min(y_lo, r.roofline_gops);
        if (r.point_gops) {
            y_lo = std::min(y_lo, *r.point_gops);
            y_hi = std::max(y_hi, *r.point_gops);
        }
    }
    x_lo = std::pow(10.0, std::floor(std::log10(x_lo)));
    x_hi = std::pow(10.0, std::ceil(std::log10(x_hi)));
    y_lo = std::pow(10.0, std::floor(std::log10(y_lo)));
    y_hi = std::pow(10.0, std::ceil(std::log10(y_hi * 1.01)));
    if (x_hi <= x_lo) x_hi = x_lo * 10;
    if (y_hi <= y_lo) y_hi = y_lo * 10;

    auto px = [&](double x) {
        return kLeft + (std::log10(x) - std::log10(x_lo)) / (std::log10(x_hi) - std::log10(x_lo)) * (kWidth - kLeft - kRight);
    };
    auto py = [&](double y) {
        return kHeight - kBottom -
               (std::log10(y) - std::log10(y_lo)) / (std::log10(y_hi) - std::log10(y_lo)) * (kHeight - kTop - kBottom);
    };
    auto f = [](double v) { return format_sig4(v); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">Roofline: "
        << xml_escape(model.component_id) << " (" << f(model.ceiling_gops) << " GOPS/s, " << f(model.roof_bandwidth_gbs)
        << " GB/s, ridge " << f(ridge_point(model)) << ")</text>\n";

    for (double x = x_lo; x <= x_hi * 1.0001; x *= 10) {
        svg << "<line x1=\"" << f(px(x)) << "\" y1=\"" << kTop << "\" x2=\"" << f(px(x)) << "\" y2=\""
            << kHeight - kBottom << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << f(px(x)) << "\" y=\"" << kHeight - kBottom + 15 << "\" text-anchor=\"middle\">"
            << f(x) << "</text>\n";
    }
    for (double y = y_lo; y <= y_hi * 1.0001; y *= 10) {
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << f(py(y)) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
            << f(py(y)) << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << kLeft - 5 << "\" y=\"" << f(py(y) + 4) << "\" text-anchor=\"end\">" << f(y)
            << "</text>\n";
    }
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\">Operational intensity (ops/byte)</text>\n";
    svg << "<text transform=\"translate(16," << kHeight / 2
        << ") rotate(-90)\" text-anchor=\"middle\">Performance (GOPS/s)</text>\n";

    svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& r : series) {
        if (r.point_label) continue;
        svg << (first ? "" : " ") << f(px(r.oi)) << "," << f(py(r.roofline_gops));
        first = false;
    }
    svg << "\"/>\n";

    for (const auto& r : series) {
        if (!r.point_label) continue;
        const double x = px(*r.point_oi), y = py(*r.point_gops);
        const bool theoretical = r.point_kind && *r.point_kind == OiKind::Theoretical;
        const char* color = r.bound == Bound::Memory ? "#1f77b4" : "#d62728";
        if (theoretical) {
            svg << "<rect x=\"" << f(x - 4) << "\" y=\"" << f(y - 4) << "\" width=\"8\" height=\"8\" fill=\"" << color
                << "\"/>\n";
        } else {
            svg << "<polygon points=\"" << f(x) << "," << f(y - 5) << " " << f(x + 5) << "," << f(y) << " " << f(x)
                << "," << f(y + 5) << " " << f(x - 5) << "," << f(y) << "\" fill=\"" << color << "\"/>\n";
        }
        svg << "<text x=\"" << f(x + 7) << "\" y=\"" << f(y - 6) << "\">" << xml_escape(*r.point_label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

std::string emit(const Table& table, Format format) {
    switch (format) {
        case Format::Csv: return join_csv(table);
        case Format::Json: return join_json(table);
        case Format::Svg: break;
    }
    throw Error(ErrorCode::UnsupportedFormat, "tables cannot be rendered as svg");
}

std::string emit(const std::vector<SeriesRow>& series, const RooflineModel& model, Format format) {
    if (series.empty()) throw Error(ErrorCode::EmptyRange, "empty roofline series");
    if (format == Format::Svg) return render_svg(series, model);
    Table table;
    table.header = {"oi_flops_per_byte", "roofline_gops", "point_label", "point_oi", "point_gops", "oi_kind", "bound"};
    for (const auto& r : series) {
        std::vector<Cell> row{r.oi, r.roofline_gops};
        row.emplace_back(r.point_label.value_or(""));
        row.emplace_back(r.point_oi ? Cell(*r.point_oi) : Cell(std::string()));
        row.emplace_back(r.point_gops ? Cell(*r.point_gops) : Cell(std::string()));
        row.emplace_back(r.point_kind ? std::string(to_string(*r.point_kind)) : std::string());
        row.emplace_back(std::string(to_string(r.bound)));
        table.rows.push_back(std::move(row));
    }
    return emit(table, format);
}

std::string emit(const SimResult& result, Format format) {
    if (format == Format::Svg) throw Error(ErrorCode::UnsupportedFormat, "simulation results cannot be rendered as svg");
    if (format == Format::Csv) {
        Table table;
        table.header = {"component", "frames", "share", "busy_s", "energy_j", "throughput_ips", "images_per_joule"};
        for (const auto& [id, frames] : result.frames_per_component) {
            const double joules = result.energy_per_component_j.at(id);
            table.rows.push_back({id, frames, result.composition.at(id), result.busy_time_s.at(id), joules,
                                  static_cast<double>(frames) / result.makespan_s,
                                  joules > 0.0 ? static_cast<double>(frames) / joules : 0.0});
        }
        table.rows.push_back({std::string("total"), result.frame_count, 1.0, result.makespan_s, result.energy_j,
                              result.throughput_ips, result.energy_efficiency_ipj});
        return emit(table, Format::Csv);
    }
    ordered_json j;
    j["frame_count"] = result.frame_count;
    j["makespan_s"] = round_sig4(result.makespan_s);
    j["throughput_ips"] = round_sig4(result.throughput_ips);
    j["energy_j"] = round_sig4(result.energy_j);
    j["energy_efficiency_ipj"] = round_sig4(result.energy_efficiency_ipj);
    j["reorder_high_water"] = result.reorder_high_water;
    j["components"] = ordered_json::array();
    for (const auto& [id, frames] : result.frames_per_component) {
        ordered_json c;
        c["id"] = id;
        c["frames"] = frames;
        c["share"] = round_sig4(result.composition.at(id));
        c["busy_s"] = round_sig4(result.busy_time_s.at(id));
        c["energy_j"] = round_sig4(result.energy_per_component_j.at(id));
        c["effective_rate_ips"] = round_sig4(result.effective_rate_ips.at(id));
        j["components"].push_back(std::move(c));
    }
    return j.dump(2) + "\n";
}

std::string emit(const CalibrationResult& result, Format format) {
    if (format == Format::Svg) throw Error(ErrorCode::UnsupportedFormat, "calibration results cannot be rendered as svg");
    if (format == Format::Csv) {
        Table table;
        table.header = {"parameter", "value"};
        table.rows.push_back({std::string("dispatch_overhead_s"), result.dispatch_overhead_s});
        for (const auto& [id, f] : result.contention) table.rows.push_back({"availability." + id, f});
        table.rows.push_back({std::string("throughput_ips"), result.fitted.throughput_ips});
        table.rows.push_back({std::string("throughput_rel_error_pct"), 100.0 * result.throughput_rel_error});
        for (const auto& [id, e] : result.composition_error_pp) table.rows.push_back({"share_error_pp." + id, e});
        for (const auto& [id, s] : result.fitted.composition) table.rows.push_back({"share." + id, s});
        return emit(table, Format::Csv);
    }
    ordered_json j;
    j["dispatch_overhead_s"] = round_sig4(result.dispatch_overhead_s);
    j["contention"] = ordered_json::object();
    for (const auto& [id, f] : result.contention) j["contention"][id] = round_sig4(f);
    j["throughput_ips"] = round_sig4(result.fitted.throughput_ips);
    j["throughput_rel_error_pct"] = round_sig4(100.0 * result.throughput_rel_error);
    j["composition"] = ordered_json::object();
    for (const auto& [id, s] : result.fitted.composition) j["composition"][id] = round_sig4(s);
    j["composition_error_pp"] = ordered_json::object();
    for (const auto& [id, e] : result.composition_error_pp) j["composition_error_pp"][id] = round_sig4(e);
    j["loss"] = round_sig4(result.loss);
    return j.dump(2) + "\n";
}

Scenario load_scenario(std::string_view document) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(document.begin(), document.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
    const auto& j = root.contains("scenario") ? root.at("scenario") : root;
    Scenario s;
    try {
        s.platform_id = j.at("platform").get<std::string>();
        s.network_id = j.at("network").get<std::string>();
        s.engaged = j.at("components").get<std::vector<std::string>>();
        if (j.contains("frames")) s.frame_count = j.at("frames").get<std::int64_t>();
        if (j.contains("dispatch_overhead_s")) s.dispatch_overhead_s = j.at("dispatch_overhead_s").get<double>();
        if (j.contains("contention"))
            for (const auto& [id, v] : j.at("contention").items()) s.contention[id] = v.get<double>();
        if (j.contains("host_penalty")) s.host_penalty = j.at("host_penalty").get<double>();
        if (j.contains("jitter") && !j.at("jitter").is_null()) {
            Jitter jit;
            jit.seed = j.at("jitter").value("seed", std::uint64_t{0});
            jit.cv = j.at("jitter").value("cv", 0.0);
            s.jitter = jit;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
    if (s.engaged.empty()) throw Error(ErrorCode::EmptyEngagement, "scenario engages no components");
    return s;
}

std::string to_json(const Scenario& scenario) {
    ordered_json j;
    j["platform"] = scenario.platform_id;
    j["network"] = scenario.network_id;
    j["components"] = scenario.engaged;
    j["frames"] = scenario.frame_count;
    j["dispatch_overhead_s"] = scenario.dispatch_overhead_s;
    j["contention"] = ordered_json::object();
    for (const auto& [id, f] : scenario.contention) j["contention"][id] = f;
    if (scenario.host_penalty != 1.0) j["host_penalty"] = scenario.host_penalty;
    if (scenario.jitter) j["jitter"] = {{"seed", scenario.jitter->seed}, {"cv", scenario.jitter->cv}};
    return j.dump(2) + "\n";
}

Scenario scenario_for(const CoexecObservation& observation, std::int64_t frames) {
    Scenario s;
    s.platform_id = observation.platform;
    s.network_id = observation.network;
    s.engaged = observation.engaged;
    s.frame_count = frames;
    return s;
}

CalibrationResult calibrate_observation(const Dataset& dataset, const CoexecObservation& observation,
                                        std::int64_t frames) {
    const auto& platform = dataset.platform(observation.platform);
    const auto& profile = dataset.network(observation.network);
    CalibrationTarget target;
    target.throughput_ips = observation.coexec_ips;
    CalibrationOptions options;
    if (observation.composition_pct.empty()) {
        options.fit_overhead = true;
    } else {
        options.fit_overhead = false;
        options.fit_contention = observation.engaged;
        for (const auto& [id, pct] : observation.composition_pct) target.composition[id] = pct / 100.0;
    }
    return calibrate(platform, profile, scenario_for(observation, frames), target, options);
}

Table throughput_table(const Dataset& dataset, std::int64_t frames) {
    Table table;
    table.header = {"network"};
    std::vector<std::pair<const Platform*, const ComponentSpec*>> columns;
    for (const auto& p : dataset.platforms)
        for (const auto& c : p.components) {
            table.header.push_back(c.id);
            columns.emplace_back(&p, &c);
        }
    for (const auto& net : dataset.networks) {
        std::vector<Cell> row{net.id};
        for (const auto& [platform, component] : columns) {
            if (!net.supports(component->id)) {
                row.emplace_back(std::string(net.knows(component->id) ? "Not Supported" : ""));
                continue;
            }
            Scenario s;
            s.platform_id = platform->id;
            s.network_id = net.id;
            s.engaged = {component->id};
            s.frame_count = frames;
            row.emplace_back(simulate(*platform, net, s).throughput_ips);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table coexec_table(const Dataset& dataset, int which, std::int64_t frames) {
    if (which != 2 && which != 3)
        throw Error(ErrorCode::InvalidScenario, "co-execution tables are 2 and 3, not " + std::to_string(which));
    std::vector<const CoexecObservation*> rows;
    for (const auto& o : dataset.observations)
        if (o.table == which) rows.push_back(&o);

    std::vector<std::future<CalibrationResult>> fits;
    for (const auto* o : rows)
        fits.push_back(std::async(std::launch::async, [&dataset, o, frames] {
            return calibrate_observation(dataset, *o, frames);
        }));

    Table table;
    if (which == 2) {
        table.header = {"platform",           "network",        "single_component",  "single_ips",
                        "coexec_measured_ips", "coexec_simulated_ips", "throughput_error_pct", "gain_reported_pct",
                        "gain_simulated_pct", "dispatch_overhead_ms"};
    } else {
        table.header = {"platform", "network", "single_component", "single_ips", "coexec_measured_ips",
                        "coexec_simulated_ips", "throughput_error_pct", "gain_reported_pct", "gain_simulated_pct"};
        std::set<std::string> ids;
        for (const auto* o : rows)
            for (const auto& [id, pct] : o->composition_pct) ids.insert(id);
        for (const auto& id : ids) {
            table.header.push_back(id + "_share_reported_pct");
            table.header.push_back(id + "_share_simulated_pct");
        }
        for (const auto& id : ids) table.header.push_back(id + "_availability");
    }

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& o = *rows[i];
        const auto fit = fits[i].get();
        const double simulated = fit.fitted.throughput_ips;
        std::vector<Cell> row{o.platform, o.network, o.baseline, o.baseline_ips, o.coexec_ips, simulated,
                              100.0 * fit.throughput_rel_error, o.gain_pct, gain_pct(simulated, o.baseline_ips)};
        if (which == 2) {
            row.emplace_back(1e3 * fit.dispatch_overhead_s);
        } else {
            std::set<std::string> ids;
            for (std::size_t h = 9; h < table.header.size(); ++h) {
                const auto& name = table.header[h];
                const auto cut = name.find("_share_reported_pct");
                if (cut != std::string::npos) ids.insert(name.substr(0, cut));
            }
            for (const auto& id : ids) {
                auto it = o.composition_pct.find(id);
                row.emplace_back(it == o.composition_pct.end() ? Cell(std::string()) : Cell(it->second));
                auto share = fit.fitted.composition.find(id);
                row.emplace_back(share == fit.fitted.composition.end() ? Cell(std::string())
                                                                       : Cell(100.0 * share->second));
            }
            for (const auto& id : ids) {
                auto f = fit.contention.find(id);
                row.emplace_back(f == fit.contention.end() ? Cell(std::string()) : Cell(f->second));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace socperf
