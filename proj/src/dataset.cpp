#include "straincast/dataset.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "internal_io.hpp"
#include "straincast/errors.hpp"

namespace straincast {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

bool is_time_label(const std::string& label) { return label == "time_s" || label == "time"; }

std::string joined_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ", ";
        out += labels[i];
    }
    return out;
}

}  // namespace

bool RunSeries::has_channel(const std::string& label) const {
    for (const auto& l : labels) {
        if (l == label) return true;
    }
    return false;
}

const Vector& RunSeries::channel(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return channels[i];
    }
    throw_data("channel '" + label + "' not found; available channels: " + joined_labels(labels));
}

RunSeries load_csv(const std::string& path, double dt_override) {
    const std::string content = read_file(path);
    RunSeries run;
    double dt_meta = 0.0;

    std::vector<std::string> header;
    bool skip_time_col = false;
    std::size_t line_no = 0;
    std::size_t data_rows = 0;

    std::istringstream stream(content);
    std::string raw;
    while (std::getline(stream, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(std::string_view(line).substr(1));
            const std::size_t eq = body.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = trim(std::string_view(body).substr(0, eq));
            const std::string value = trim(std::string_view(body).substr(eq + 1));
            if (key == "dt") {
                if (!parse_double(value, dt_meta) || !(dt_meta > 0)) {
                    throw_data(path + ": line " + std::to_string(line_no) +
                               ": invalid dt value '" + value + "'");
                }
            } else if (key == "train") {
                run.meta.train_kind = value;
            } else if (key == "speed_kmph") {
                if (!parse_double(value, run.meta.speed_kmph)) {
                    throw_data(path + ": line " + std::to_string(line_no) +
                               ": invalid speed_kmph value '" + value + "'");
                }
            } else if (key == "source") {
                run.meta.source = value;
            }
            continue;
        }
        if (header.empty()) {
            header = split_csv_line(line);
            if (!header.empty() && is_time_label(header.front())) {
                skip_time_col = true;
                header.erase(header.begin());
            }
            if (header.empty()) throw_data(path + ": header row has no channel labels");
            std::set<std::string> seen;
            for (const auto& label : header) {
                if (label.empty()) throw_data(path + ": empty channel label in header");
                if (!seen.insert(label).second) {
                    throw_data(path + ": duplicate channel label '" + label + "'");
                }
            }
            run.labels = header;
            run.channels.assign(header.size(), Vector{});
            continue;
        }

        const auto fields = split_csv_line(line);
        const std::size_t expected = header.size() + (skip_time_col ? 1 : 0);
        if (fields.size() != expected) {
            throw_data(path + ": row " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(expected));
        }
        for (std::size_t c = 0; c < header.size(); ++c) {
            const std::string& cell = fields[c + (skip_time_col ? 1 : 0)];
            double value = 0.0;
            if (!parse_double(cell, value)) {
                throw_data(path + ": row " + std::to_string(line_no) + " col " +
                           std::to_string(c + 1 + (skip_time_col ? 1 : 0)) +
                           ": not a number: '" + cell + "'");
            }
            run.channels[c].push_back(value);
        }
        ++data_rows;
    }

    if (header.empty()) throw_data(path + ": no header row found");
    if (data_rows < 2) {
        throw_data(path + ": need at least 2 data rows, found " + std::to_string(data_rows));
    }
    run.dt = dt_override > 0 ? dt_override : dt_meta;
    if (!(run.dt > 0)) {
        throw_data(path + ": sampling period missing; add a '# dt=<seconds>' line or pass --dt");
    }
    return run;
}

void save_csv(const RunSeries& run, const std::string& path) {
    if (run.labels.empty() || run.length() < 2) {
        throw_data("save_csv: series must have channels with at least 2 samples");
    }
    if (!(run.dt > 0)) throw_data("save_csv: series dt must be > 0");
    for (const auto& ch : run.channels) {
        if (ch.size() != run.length()) throw_data("save_csv: channels have unequal lengths");
    }

    std::string out;
    out += "# dt=" + format_double(run.dt) + "\n";
    out += "# train=" + run.meta.train_kind + "\n";
    out += "# speed_kmph=" + format_double(run.meta.speed_kmph) + "\n";
    if (!run.meta.source.empty()) out += "# source=" + run.meta.source + "\n";
    out += "time_s";
    for (const auto& label : run.labels) out += "," + label;
    out += "\n";
    for (std::size_t i = 0; i < run.length(); ++i) {
        out += format_double(static_cast<double>(i) * run.dt);
        for (const auto& ch : run.channels) out += "," + format_double(ch[i]);
        out += "\n";
    }
    write_file_atomic(path, out);
}

const ChannelStats& NormStats::stats(const std::string& label) const {
    const auto it = per_channel.find(label);
    if (it == per_channel.end()) {
        throw_data("no normalization statistics for channel '" + label + "'");
    }
    return it->second;
}

double NormStats::normalize(const std::string& label, double x) const {
    const auto& s = stats(label);
    return (x - s.mean) / s.stddev;
}

double NormStats::denormalize(const std::string& label, double x) const {
    const auto& s = stats(label);
    return x * s.stddev + s.mean;
}

Vector NormStats::normalize(const std::string& label, const Vector& v) const {
    const auto& s = stats(label);
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - s.mean) / s.stddev;
    return out;
}

Vector NormStats::denormalize(const std::string& label, const Vector& v) const {
    const auto& s = stats(label);
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s.stddev + s.mean;
    return out;
}

NormStats fit_normalizer(const RunSeries& run, const std::vector<std::string>& channels,
                         std::size_t prefix_len) {
    NormStats stats;
    for (const auto& label : channels) {
        const Vector& full = run.channel(label);
        const std::size_t n = prefix_len > 0 ? std::min(prefix_len, full.size()) : full.size();
        if (n == 0) throw_data("fit_normalizer: channel '" + label + "' is empty");
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += full[i];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = full[i] - mean;
            var += d * d;
        }
        var /= static_cast<double>(n);  // population convention
        const double sd = std::sqrt(var);
        if (sd == 0.0) {
            throw_data("fit_normalizer: channel '" + label +
                       "' is constant (zero standard deviation)");
        }
        stats.per_channel[label] = ChannelStats{mean, sd};
    }
    return stats;
}

WindowedDataset make_windows(const Vector& source, const Vector& target, int window) {
    if (source.size() != target.size()) {
        throw_data("make_windows: source and target lengths differ: " +
                   std::to_string(source.size()) + " vs " + std::to_string(target.size()));
    }
    const std::size_t n = source.size();
    if (window < 1) throw_usage("make_windows: window must be >= 1");
    if (static_cast<std::size_t>(window) > n) {
        throw_data("make_windows: window " + std::to_string(window) +
                   " exceeds series length " + std::to_string(n));
    }
    const auto T = static_cast<std::size_t>(window);
    WindowedDataset ds;
    ds.window = window;
    ds.samples.reserve(n - T + 1);
    for (std::size_t k = 0; k + T <= n; ++k) {
        Sample s;
        s.window.assign(source.begin() + static_cast<std::ptrdiff_t>(k),
                        source.begin() + static_cast<std::ptrdiff_t>(k + T));
        s.target = target[k + T - 1];
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

WindowedDataset make_windows_runs(const std::vector<RunSeries>& runs,
                                  const std::string& source_label,
                                  const std::string& target_label, int window,
                                  std::vector<std::string>* warnings) {
    WindowedDataset all;
    all.window = window;
    all.source_label = source_label;
    all.target_label = target_label;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const Vector& src = runs[r].channel(source_label);
        if (src.size() < static_cast<std::size_t>(window)) {
            if (warnings) {
                warnings->push_back("run " + std::to_string(r + 1) + " has " +
                                    std::to_string(src.size()) + " samples, shorter than window " +
                                    std::to_string(window) + "; skipped");
            }
            continue;
        }
        WindowedDataset part = make_windows(src, runs[r].channel(target_label), window);
        all.samples.insert(all.samples.end(), std::make_move_iterator(part.samples.begin()),
                           std::make_move_iterator(part.samples.end()));
    }
    return all;
}

std::pair<WindowedDataset, WindowedDataset> split_chronological(const WindowedDataset& ds,
                                                                double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw_usage("split: ratio must lie in (0,1)");
    if (ds.samples.empty()) throw_data("split: dataset is empty");
    const auto n = ds.samples.size();
    const auto n_train =
        static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n)));
    if (n_train == 0 || n_train >= n) {
        throw_data("split: ratio " + std::to_string(ratio) + " leaves an empty side for " +
                   std::to_string(n) + " samples");
    }
    WindowedDataset train{ds.window, ds.source_label, ds.target_label, {}};
    WindowedDataset val{ds.window, ds.source_label, ds.target_label, {}};
    train.samples.assign(ds.samples.begin(), ds.samples.begin() + static_cast<std::ptrdiff_t>(n_train));
    val.samples.assign(ds.samples.begin() + static_cast<std::ptrdiff_t>(n_train), ds.samples.end());
    return {std::move(train), std::move(val)};
}

}  // namespace straincast
