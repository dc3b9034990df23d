#include "aadg/adapters/stub_world.hpp"

#include <algorithm>
#include <cmath>

#include "aadg/rng.hpp"

namespace aadg::adapters::stub {

const std::vector<SceneEntry>& scene_table() {
    static const std::vector<SceneEntry> table = {
        {"rain_street",
         "a quiet residential street on a rainy evening",
         "Steady rain over a quiet residential street with sparse traffic.",
         {"steady rain falling on pavement", "a car passing slowly on a wet road",
          "distant thunder rolling", "wind rustling through hedges", "water gurgling in a gutter"},
         {"glass shattering against concrete", "a sudden metallic crash", "a person screaming sharply"}},
        {"harbor",
         "a small fishing harbor in the early morning",
         "Gulls, water and idling engines in a small harbor at first light.",
         {"seagulls calling overhead", "waves lapping against wooden hulls",
          "ropes creaking on moorings", "a diesel engine idling low", "chains clinking on a dock"},
         {"a loud explosion echoing across the water", "an alarm siren wailing",
          "heavy glass breaking on stone"}},
        {"office",
         "an open-plan office in the afternoon",
         "Keyboards, printers and low voices in a working office.",
         {"keyboards clacking steadily", "a printer whirring through pages",
          "muffled conversation behind partitions", "an air conditioner humming",
          "a phone ringing twice"},
         {"a fire alarm blaring suddenly", "a window pane cracking loudly",
          "a dog barking between the desks"}},
        {"forest",
         "a pine forest at dawn",
         "Birdsong and moving water in a pine forest at dawn.",
         {"songbirds chirping in the canopy", "a woodpecker drumming on bark",
          "leaves rustling in a light breeze", "a stream trickling over stones"},
         {"a chainsaw roaring to life", "a gunshot cracking in the distance",
          "tires screeching on a hidden road"}},
        {"kitchen",
         "a busy restaurant kitchen at dinner service",
         "Sizzling pans and clattering plates in a restaurant kitchen.",
         {"pans sizzling over open flames", "knives chopping on wooden boards",
          "a ventilation hood roaring softly", "plates clattering into a sink", "a timer beeping"},
         {"a gas canister hissing violently", "a stack of dishes crashing to the floor",
          "a smoke detector shrieking"}},
        {"train_station",
         "a commuter train platform at rush hour",
         "Trains, announcements and hurried footsteps on a crowded platform.",
         {"a train braking with a long squeal", "an announcement chiming over speakers",
          "footsteps echoing on tiles", "rolling suitcases rumbling past"},
         {"a loud firecracker popping", "a child wailing in panic", "metal barriers toppling over"}},
        {"farm",
         "a small farmyard in the morning",
         "Poultry and a working tractor in a morning farmyard.",
         {"a rooster crowing", "hens clucking around a coop", "a tractor engine chugging",
          "hay rustling as it is forked"},
         {"a wolf howling close by", "a barn door slamming violently in the wind",
          "a swarm of bees buzzing angrily"}},
        {"beach",
         "a sandy beach on a summer afternoon",
         "Surf, wind and distant play on a summer beach.",
         {"surf breaking on the shore", "children laughing in the distance",
          "a kite flapping in the wind", "an ice cream van chiming far away"},
         {"a lifeguard whistle shrieking repeatedly", "a jet ski engine sputtering and backfiring",
          "thunder cracking directly overhead"}},
        {"library",
         "a university library reading room",
         "Pages, pencils and carpeted footsteps in a reading room.",
         {"pages turning softly", "a pencil scratching on paper", "a book cart rolling on carpet",
          "a distant cough"},
         {"a bookshelf toppling with a heavy crash", "a cell phone ringtone blaring",
          "a window shattering inward"}},
        {"garage",
         "an auto repair garage at midday",
         "Power tools and running engines in a repair garage.",
         {"an impact wrench rattling", "a hydraulic lift whirring",
          "metal tools clinking on concrete", "an engine revving on a test bench"},
         {"a tire exploding under pressure", "a heavy toolbox crashing off a shelf",
          "an electrical panel buzzing and sparking"}},
    };
    return table;
}

double band_edge_hz(int i) {
    return kBandLoHz * std::pow(kBandHiHz / kBandLoHz, static_cast<double>(i) / kBandCount);
}

int band_of_hz(double hz) {
    if (hz < kBandLoHz || hz >= kBandHiHz) return -1;
    for (int b = kBandCount - 1; b >= 0; --b)
        if (hz >= band_edge_hz(b)) return b;
    return -1;
}

SignalPlan signal_plan_for(std::string_view description, int sample_rate) {
    SplitMix64 rng(token_multiset_hash(description));

    // three distinct bands, strongest first
    std::array<int, 3> bands{};
    for (int i = 0; i < 3; ++i) {
        int b;
        bool dup;
        do {
            b = static_cast<int>(rng.below(kBandCount));
            dup = false;
            for (int j = 0; j < i; ++j) dup |= (bands[static_cast<std::size_t>(j)] == b);
        } while (dup);
        bands[static_cast<std::size_t>(i)] = b;
    }

    SignalPlan plan;
    plan.bands = bands;
    plan.amps = {0.30, 0.22, 0.15};
    const double bin_hz = static_cast<double>(sample_rate) / kAnalysisWindow;
    for (int i = 0; i < 3; ++i) {
        double lo = band_edge_hz(bands[static_cast<std::size_t>(i)]);
        double hi = band_edge_hz(bands[static_cast<std::size_t>(i)] + 1);
        // keep away from the band edges, then snap to the analysis grid
        double span = hi - lo;
        long k_lo = std::lround(std::ceil((lo + 0.2 * span) / bin_hz));
        long k_hi = std::lround(std::floor((hi - 0.2 * span) / bin_hz));
        if (k_hi < k_lo) k_hi = k_lo;
        long k = k_lo + static_cast<long>(rng.below(static_cast<std::uint64_t>(k_hi - k_lo + 1)));
        plan.freqs_hz[static_cast<std::size_t>(i)] = static_cast<double>(k) * bin_hz;
    }
    return plan;
}

} // namespace aadg::adapters::stub
