#include "straincast/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "internal_io.hpp"
#include "straincast/errors.hpp"

namespace straincast {

void save_predictions_csv(const PredictionTable& t, const std::string& path) {
    if (t.size() == 0) throw_data("save_predictions_csv: no rows");
    std::string out = "index,time_s,predicted_microstrain";
    if (t.has_target()) out += ",target_microstrain";
    out += "\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += std::to_string(i);
        out += "," + format_double(t.time_s[i]);
        out += "," + format_double(t.predicted[i]);
        if (t.has_target()) out += "," + format_double(t.target[i]);
        out += "\n";
    }
    write_file_atomic(path, out);
}

PredictionTable load_predictions_csv(const std::string& path) {
    const std::string content = read_file(path);
    std::istringstream stream(content);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    bool with_target = false;
    PredictionTable t;

    while (std::getline(stream, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line == "index,time_s,predicted_microstrain,target_microstrain") {
                with_target = true;
            } else if (line == "index,time_s,predicted_microstrain") {
                with_target = false;
            } else {
                throw_data(path + ": unrecognized predictions header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::size_t start = 0;
        std::vector<std::string> fields;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        const std::size_t expected = with_target ? 4 : 3;
        if (fields.size() != expected) {
            throw_data(path + ": row " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(expected));
        }
        double time = 0, pred = 0, tgt = 0;
        if (!parse_double(fields[1], time) || !parse_double(fields[2], pred) ||
            (with_target && !parse_double(fields[3], tgt))) {
            throw_data(path + ": row " + std::to_string(line_no) + ": non-numeric value");
        }
        t.time_s.push_back(time);
        t.predicted.push_back(pred);
        if (with_target) t.target.push_back(tgt);
    }
    if (!header_seen) throw_data(path + ": no header row found");
    if (t.size() == 0) throw_data(path + ": no prediction rows");
    if (t.time_s.size() >= 2) t.dt = t.time_s[1] - t.time_s[0];
    return t;
}

void write_report_csv(const PredictionTable& t, const std::string& path) {
    if (t.size() == 0) throw_data("report: no rows");
    if (!t.has_target()) throw_data("report: predictions carry no target column");
    std::string out = "time_s,target_microstrain,predicted_microstrain\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += format_double(t.time_s[i]) + "," + format_double(t.target[i]) + "," +
               format_double(t.predicted[i]) + "\n";
    }
    write_file_atomic(path, out);
}

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

void write_report_svg(const PredictionTable& t, const std::string& path) {
    if (t.size() == 0) throw_data("report: no rows");
    if (!t.has_target()) throw_data("report: predictions carry no target column");

    const double width = 960, height = 520;
    const double left = 78, right = 24, top = 28, bottom = 58;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    const double x_min = t.time_s.front(), x_max = t.time_s.back();
    double y_min = t.target[0], y_max = t.target[0];
    for (std::size_t i = 0; i < t.size(); ++i) {
        y_min = std::min({y_min, t.target[i], t.predicted[i]});
        y_max = std::max({y_max, t.target[i], t.predicted[i]});
    }
    if (y_max == y_min) {
        y_max += 1.0;
        y_min -= 1.0;
    }
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    const double x_span = x_max > x_min ? x_max - x_min : 1.0;
    auto sx = [&](double x) { return left + (x - x_min) / x_span * plot_w; };
    auto sy = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };

    auto polyline = [&](const std::vector<double>& ys, const char* color, const char* dash) {
        std::string pts;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) pts += ' ';
            pts += px(sx(t.time_s[i])) + "," + px(sy(ys[i]));
        }
        std::string elem = "  <polyline fill=\"none\" stroke=\"";
        elem += color;
        elem += "\" stroke-width=\"1.5\"";
        if (dash[0] != '\0') {
            elem += " stroke-dasharray=\"";
            elem += dash;
            elem += "\"";
        }
        elem += " points=\"" + pts + "\"/>\n";
        return elem;
    };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" +
           px(height) + "\" viewBox=\"0 0 " + px(width) + " " + px(height) + "\">\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"" + px(width) + "\" height=\"" + px(height) +
           "\" fill=\"white\"/>\n";

    // axes and ticks
    const int n_ticks = 6;
    svg += "  <g stroke=\"#444444\" stroke-width=\"1\">\n";
    svg += "    <line x1=\"" + px(left) + "\" y1=\"" + px(top + plot_h) + "\" x2=\"" +
           px(left + plot_w) + "\" y2=\"" + px(top + plot_h) + "\"/>\n";
    svg += "    <line x1=\"" + px(left) + "\" y1=\"" + px(top) + "\" x2=\"" + px(left) +
           "\" y2=\"" + px(top + plot_h) + "\"/>\n";
    svg += "  </g>\n";
    svg += "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">\n";
    for (int i = 0; i < n_ticks; ++i) {
        const double frac = static_cast<double>(i) / (n_ticks - 1);
        const double xv = x_min + frac * x_span;
        const double yv = y_min + frac * (y_max - y_min);
        svg += "    <text x=\"" + px(sx(xv)) + "\" y=\"" + px(top + plot_h + 18) +
               "\" text-anchor=\"middle\">" + tick_label(xv) + "</text>\n";
        svg += "    <text x=\"" + px(left - 8) + "\" y=\"" + px(sy(yv) + 4) +
               "\" text-anchor=\"end\">" + tick_label(yv) + "</text>\n";
    }
    svg += "    <text x=\"" + px(left + plot_w / 2) + "\" y=\"" + px(height - 14) +
           "\" text-anchor=\"middle\">time (s)</text>\n";
    svg += "    <text x=\"18\" y=\"" + px(top + plot_h / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + px(top + plot_h / 2) +
           ")\">strain (microstrain)</text>\n";
    svg += "  </g>\n";

    svg += polyline(t.target, "#1f77b4", "");
    svg += polyline(t.predicted, "#d62728", "6 3");

    // legend
    const double lx = left + plot_w - 150, ly = top + 10;
    svg += "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">\n";
    svg += "    <line x1=\"" + px(lx) + "\" y1=\"" + px(ly) + "\" x2=\"" + px(lx + 28) +
           "\" y2=\"" + px(ly) + "\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
    svg += "    <text x=\"" + px(lx + 34) + "\" y=\"" + px(ly + 4) + "\">Target</text>\n";
    svg += "    <line x1=\"" + px(lx) + "\" y1=\"" + px(ly + 18) + "\" x2=\"" + px(lx + 28) +
           "\" y2=\"" + px(ly + 18) +
           "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
    svg += "    <text x=\"" + px(lx + 34) + "\" y=\"" + px(ly + 22) + "\">Predicted</text>\n";
    svg += "  </g>\n";
    svg += "</svg>\n";

    write_file_atomic(path, svg);
}

}  // namespace straincast
