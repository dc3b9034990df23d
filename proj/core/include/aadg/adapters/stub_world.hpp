#pragma once

#include <array>
#include <string_view>
#include <vector>

namespace aadg::adapters::stub {

// Fixed catalogue behind the offline backends. The scenario stub writes
// prose that quotes these descriptions verbatim, the extraction stub
// recovers them by substring match, and the synthesis/embedding stubs hash
// the same descriptions, which is what makes the offline pipeline cohere
// end to end.
struct SceneEntry {
    const char* name;
    const char* setting;
    const char* summary;
    std::vector<const char*> normal;
    std::vector<const char*> anomalies;
};

const std::vector<SceneEntry>& scene_table();

inline constexpr int kBandCount = 8;
inline constexpr double kBandLoHz = 100.0;
inline constexpr double kBandHiHz = 4000.0;
inline constexpr int kAnalysisWindow = 4096;

// Log-spaced band edges over [100, 4000] Hz; band i spans [edge(i), edge(i+1)).
double band_edge_hz(int i);
// -1 when outside [100, 4000)
int band_of_hz(double hz);

// Three sinusoids with hash-chosen frequencies in distinct bands, aligned to
// the analysis grid so the stub embeddings measure exactly what the stub
// synthesizer emitted. Deterministic in the description's token multiset.
struct SignalPlan {
    std::array<int, 3> bands;
    std::array<double, 3> freqs_hz;
    std::array<double, 3> amps;
};

SignalPlan signal_plan_for(std::string_view description, int sample_rate);

} // namespace aadg::adapters::stub
