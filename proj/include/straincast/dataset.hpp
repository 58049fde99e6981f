#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "straincast/linalg.hpp"

namespace straincast {

struct RunMeta {
    std::string train_kind = "synthetic";  // test | passenger | synthetic
    double speed_kmph = 0.0;
    std::string source;  // free text
    bool operator==(const RunMeta&) const = default;
};

// One train crossing: multi-channel strain samples at a fixed period.
struct RunSeries {
    double dt = 0.0;  // sampling period, seconds
    std::vector<std::string> labels;
    std::vector<Vector> channels;  // parallel to labels, equal lengths
    RunMeta meta;

    std::size_t length() const { return channels.empty() ? 0 : channels.front().size(); }
    bool has_channel(const std::string& label) const;
    // Throws a data error naming the available channels when absent.
    const Vector& channel(const std::string& label) const;

    bool operator==(const RunSeries&) const = default;
};

// CSV: UTF-8, comma separated, `#` comment lines, `# dt=<seconds>` metadata,
// header row of channel labels, optional leading time column. dt_override > 0
// supplies or replaces the file's dt.
RunSeries load_csv(const std::string& path, double dt_override = 0.0);
void save_csv(const RunSeries& run, const std::string& path);

struct ChannelStats {
    double mean = 0.0;
    double stddev = 0.0;  // population convention (divide by N)
    bool operator==(const ChannelStats&) const = default;
};

struct NormStats {
    std::map<std::string, ChannelStats> per_channel;

    const ChannelStats& stats(const std::string& label) const;
    double normalize(const std::string& label, double x) const;
    double denormalize(const std::string& label, double x) const;
    Vector normalize(const std::string& label, const Vector& v) const;
    Vector denormalize(const std::string& label, const Vector& v) const;

    bool operator==(const NormStats&) const = default;
};

// Per-channel mean/std over the first prefix_len samples (0 = full series).
// Rejects constant channels (std = 0).
NormStats fit_normalizer(const RunSeries& run, const std::vector<std::string>& channels,
                         std::size_t prefix_len = 0);

struct Sample {
    Vector window;  // T consecutive source samples
    double target;  // target channel value aligned to the window's last index
};

struct WindowedDataset {
    int window = 0;  // T
    std::string source_label, target_label;
    std::vector<Sample> samples;
};

// Sliding windows with stride 1: sample k has input source[k .. k+T-1] and
// target target[k+T-1], for k = 0 .. N-T. Rejects T > N or T < 1.
WindowedDataset make_windows(const Vector& source, const Vector& target, int window);

// Concatenates per-run windows; never builds a window spanning two runs.
// Runs shorter than T are skipped and noted in *warnings.
WindowedDataset make_windows_runs(const std::vector<RunSeries>& runs,
                                  const std::string& source_label,
                                  const std::string& target_label, int window,
                                  std::vector<std::string>* warnings = nullptr);

// First ceil(ratio * n) samples train, remainder validation, order kept.
// Rejects splits that leave either side empty.
std::pair<WindowedDataset, WindowedDataset> split_chronological(const WindowedDataset& ds,
                                                                double ratio);

}  // namespace straincast
