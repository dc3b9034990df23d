#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "aadg/adapters/http.hpp"
#include "aadg/adapters/rate_limiter.hpp"
#include "aadg/adapters/retry.hpp"
#include "aadg/adapters/stubs.hpp"
#include "aadg/audio/ops.hpp"
#include "aadg/audio/wav.hpp"
#include "aadg/base64.hpp"
#include "aadg/errors.hpp"
#include "aadg/verify/verify.hpp"
#include "support/scripted_backends.hpp"

using namespace aadg;
using namespace aadg::adapters;

TEST_SUITE_BEGIN("adapters");

TEST_CASE("chat stub: identical text across calls with the same seed") {
    StubChatBackend chat(0);
    ChatRequest req;
    req.system_prompt = "scene writer";
    req.user_prompt = "scenario";
    req.seed = 7;
    auto a = chat.complete(req);
    auto b = chat.complete(req);
    CHECK(a.text == b.text);
    CHECK(!a.text.empty());

    req.seed = 8;
    CHECK(chat.complete(req).text != a.text);
}

TEST_CASE("chat request bounds are checked before any transport work") {
    ChatRequest req;
    req.system_prompt = "s";
    req.user_prompt = "u";
    req.temperature = 3.0;

    auto poster = std::make_unique<testsupport::ScriptedPoster>(
        std::vector<testsupport::ScriptedPoster::Step>{{false, {200, "{}", "application/json"}}});
    auto* counter = poster.get();
    HttpChatConfig config;
    config.endpoint = "http://example.invalid";
    HttpChatBackend backend(config, std::move(poster));

    CHECK_THROWS_AS(backend.complete(req), std::invalid_argument);
    CHECK(counter->calls == 0);

    req.temperature = 0.5;
    req.max_tokens = 0;
    CHECK_THROWS_AS(backend.complete(req), std::invalid_argument);
    CHECK(counter->calls == 0);
}

namespace {
std::string chat_ok_body(const std::string& text) {
    nlohmann::json j = {{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}}};
    return j.dump();
}
} // namespace

TEST_CASE("http chat: two overloaded replies then success -> retry counter = 2") {
    using Step = testsupport::ScriptedPoster::Step;
    auto poster = std::make_unique<testsupport::ScriptedPoster>(std::vector<Step>{
        {false, {503, "overloaded", "text/plain"}},
        {false, {503, "overloaded", "text/plain"}},
        {false, {200, chat_ok_body("  hello world  "), "application/json"}},
    });
    HttpChatConfig config;
    config.endpoint = "http://example.invalid";
    config.retry.sleep = [](double) {}; // no real waiting in tests
    HttpChatBackend backend(config, std::move(poster));

    ChatRequest req;
    req.system_prompt = "s";
    req.user_prompt = "u";
    auto response = backend.complete(req);
    CHECK(response.retries == 2);
    CHECK(response.text == "hello world"); // verbatim minus surrounding whitespace
}

TEST_CASE("http chat: refusals and blank completions are not retried") {
    using Step = testsupport::ScriptedPoster::Step;
    {
        auto poster = std::make_unique<testsupport::ScriptedPoster>(
            std::vector<Step>{{false, {401, "no key", "text/plain"}}});
        auto* p = poster.get();
        HttpChatConfig config;
        config.endpoint = "http://example.invalid";
        config.retry.sleep = [](double) {};
        HttpChatBackend backend(config, std::move(poster));
        ChatRequest req{"s", "u", 0.5, 10, std::nullopt};
        CHECK_THROWS_AS(backend.complete(req), BackendRefusal);
        CHECK(p->calls == 1);
    }
    {
        auto poster = std::make_unique<testsupport::ScriptedPoster>(
            std::vector<Step>{{false, {200, chat_ok_body("   "), "application/json"}}});
        auto* p = poster.get();
        HttpChatConfig config;
        config.endpoint = "http://example.invalid";
        config.retry.sleep = [](double) {};
        HttpChatBackend backend(config, std::move(poster));
        ChatRequest req{"s", "u", 0.5, 10, std::nullopt};
        CHECK_THROWS_AS(backend.complete(req), EmptyCompletion);
        CHECK(p->calls == 1);
    }
}

TEST_CASE("http chat: transport errors surface after the retry budget") {
    using Step = testsupport::ScriptedPoster::Step;
    auto poster = std::make_unique<testsupport::ScriptedPoster>(
        std::vector<Step>{{true, {}}, {true, {}}, {true, {}}, {true, {}}});
    auto* p = poster.get();
    HttpChatConfig config;
    config.endpoint = "http://example.invalid";
    config.retry.max_retries = 3;
    config.retry.sleep = [](double) {};
    HttpChatBackend backend(config, std::move(poster));
    ChatRequest req{"s", "u", 0.5, 10, std::nullopt};
    CHECK_THROWS_AS(backend.complete(req), TransportError);
    CHECK(p->calls == 4); // 1 + 3 retries
}

TEST_CASE("http chat: credential comes from the environment, request body carries the seed") {
    using Step = testsupport::ScriptedPoster::Step;
    auto poster = std::make_unique<testsupport::ScriptedPoster>(
        std::vector<Step>{{false, {200, chat_ok_body("ok"), "application/json"}}});
    auto* p = poster.get();
    HttpChatConfig config;
    config.endpoint = "http://example.invalid";
    config.model = "test-model";
    config.api_key_env = "AADG_TEST_KEY";
    setenv("AADG_TEST_KEY", "sekrit", 1);
    HttpChatBackend backend(config, std::move(poster));

    ChatRequest req{"sys", "usr", 0.9, 64, 1234};
    backend.complete(req);
    unsetenv("AADG_TEST_KEY");

    bool bearer = false;
    for (const auto& [k, v] : p->last_headers)
        bearer |= (k == "Authorization" && v == "Bearer sekrit");
    CHECK(bearer);

    auto body = nlohmann::json::parse(p->bodies.at(0));
    CHECK(body["model"] == "test-model");
    CHECK(body["temperature"] == 0.9);
    CHECK(body["max_tokens"] == 64);
    CHECK(body["seed"] == 1234);
    CHECK(body["messages"][0]["role"] == "system");
    CHECK(body["messages"][0]["content"] == "sys");
    CHECK(body["messages"][1]["role"] == "user");
    CHECK(body["messages"][1]["content"] == "usr");
}

TEST_CASE("retry backoff: full jitter delays stay under the exponential cap") {
    RetryPolicy policy;
    policy.max_retries = 3;
    policy.base_delay_s = 1.0;
    policy.backoff_factor = 2.0;
    std::vector<double> delays;
    policy.sleep = [&delays](double s) { delays.push_back(s); };

    int calls = 0;
    int retries = -1;
    auto result = with_retries(
        policy,
        [&]() -> int {
            if (++calls < 4) throw TransportError("flaky");
            return 42;
        },
        &retries);
    CHECK(result == 42);
    CHECK(retries == 3);
    REQUIRE(delays.size() == 3);
    CHECK(delays[0] <= 1.0);
    CHECK(delays[1] <= 2.0);
    CHECK(delays[2] <= 4.0);
    for (double d : delays) CHECK(d >= 0.0);
}

TEST_CASE("tta stub: 5 s at 16 kHz is exactly 80000 samples, bit-identical per seed") {
    StubTextToAudio tta(16000);
    auto a = tta.synthesize({"dog barking", 5.0, 3});
    CHECK(a.samples.size() == 80000);
    CHECK(a.sample_rate == 16000);
    auto b = tta.synthesize({"dog barking", 5.0, 3});
    CHECK(a.samples == b.samples);
    auto c = tta.synthesize({"dog barking", 5.0, 4});
    CHECK(a.samples != c.samples); // perturbed seed changes the waveform
    CHECK(audio::peak(a) <= 1.0);
}

TEST_CASE("tta request validation and duration checks") {
    StubTextToAudio tta(16000);
    CHECK_THROWS_AS(tta.synthesize({"", 5.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(tta.synthesize({"x", 0.2, 1}), std::invalid_argument);  // below bounds
    CHECK_THROWS_AS(tta.synthesize({"x", 99.0, 1}), std::invalid_argument); // above bounds

    audio::AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.assign(static_cast<std::size_t>(3.1 * 16000), 0.1f);
    CHECK_THROWS_AS(check_duration(clip, 5.0), DurationMismatch);
    clip.samples.assign(static_cast<std::size_t>(4.9 * 16000), 0.1f);
    CHECK_NOTHROW(check_duration(clip, 5.0)); // within 5%
}

TEST_CASE("http tta: short buffer from the backend raises DurationMismatch") {
    audio::AudioClip short_clip;
    short_clip.sample_rate = 16000;
    short_clip.samples.assign(static_cast<std::size_t>(3.1 * 16000), 0.05f);
    auto wav = audio::wav_bytes(short_clip, audio::WavEncoding::float32);

    using Step = testsupport::ScriptedPoster::Step;
    auto poster = std::make_unique<testsupport::ScriptedPoster>(
        std::vector<Step>{{false, {200, wav, "audio/wav"}}});
    HttpTtaConfig config;
    config.endpoint = "http://example.invalid";
    config.retry.sleep = [](double) {};
    HttpTextToAudio backend(config, std::move(poster));
    CHECK_THROWS_AS(backend.synthesize({"dog barking", 5.0, 1}), DurationMismatch);
}

TEST_CASE("http tta: base64 JSON payload decodes to the same clip") {
    audio::AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.assign(16000 * 2, 0.25f);
    nlohmann::json body = {
        {"wav_base64", base64_encode(audio::wav_bytes(clip, audio::WavEncoding::float32))}};

    using Step = testsupport::ScriptedPoster::Step;
    auto poster = std::make_unique<testsupport::ScriptedPoster>(
        std::vector<Step>{{false, {200, body.dump(), "application/json"}}});
    HttpTtaConfig config;
    config.endpoint = "http://example.invalid";
    HttpTextToAudio backend(config, std::move(poster));
    auto back = backend.synthesize({"steady tone", 2.0, 1});
    CHECK(back.samples == clip.samples);
}

TEST_CASE("embedding stub: determinism and modality tags") {
    StubEmbedding embed(1024);
    auto a = embed.embed_text("x");
    auto b = embed.embed_text("x");
    CHECK(a.values == b.values);
    CHECK(a.dimension == 1024);
    CHECK(a.modality == EmbeddingVector::Modality::text);

    StubTextToAudio tta(16000);
    auto clip = tta.synthesize({"rain falling", 2.0, 1});
    CHECK(embed.embed_audio(clip).modality == EmbeddingVector::Modality::audio);

    CHECK_THROWS_AS(embed.embed_text(""), std::invalid_argument);
    audio::AudioClip tiny;
    tiny.sample_rate = 16000;
    tiny.samples.assign(100, 0.1f); // 6.25 ms
    CHECK_THROWS_AS(embed.embed_audio(tiny), std::invalid_argument);
}

TEST_CASE("embedding stub: designed separation across the catalogue") {
    StubEmbedding embed(1024);
    StubTextToAudio tta(16000);
    const std::vector<std::string> descriptions = {
        "rain falling",     "dog barking",          "a kettle whistling",
        "waves lapping against wooden hulls", "keyboards clacking steadily",
        "a chainsaw roaring to life",         "pans sizzling over open flames",
    };
    for (std::size_t i = 0; i < descriptions.size(); ++i) {
        auto text = embed.embed_text(descriptions[i]);
        for (std::size_t j = 0; j < descriptions.size(); ++j) {
            auto clip = tta.synthesize({descriptions[j], 2.0, 9});
            double cos = verify::cosine_similarity(text, embed.embed_audio(clip));
            if (i == j)
                CHECK(cos > 0.9);
            else
                CHECK(cos < 0.3);
        }
    }
}

TEST_CASE("embedding dimensions must agree across modalities") {
    StubEmbedding text_side(1024);
    StubEmbedding audio_side(768);
    StubTextToAudio tta(16000);
    auto t = text_side.embed_text("rain falling");
    auto a = audio_side.embed_audio(tta.synthesize({"rain falling", 2.0, 1}));
    CHECK_THROWS_AS(verify::cosine_similarity(t, a), DimensionMismatch);
}

TEST_CASE("token bucket: bursts drain, refill follows the configured rate") {
    double now = 0.0;
    std::vector<double> sleeps;
    TokenBucket bucket(60.0, 2.0, [&now] { return now; },
                       [&](double s) {
                           sleeps.push_back(s);
                           now += s;
                       });
    CHECK(bucket.try_acquire());
    CHECK(bucket.try_acquire());
    CHECK(!bucket.try_acquire()); // burst exhausted

    bucket.acquire(); // must simulate-wait ~1 s at 60 rpm
    REQUIRE(!sleeps.empty());
    CHECK(sleeps.front() == doctest::Approx(1.0).epsilon(0.05));

    now += 120.0; // long idle refills at most to the burst cap
    CHECK(bucket.try_acquire());
    CHECK(bucket.try_acquire());
    CHECK(!bucket.try_acquire());
}

TEST_CASE("token bucket serializes concurrent acquires") {
    TokenBucket bucket(6000.0, 1.0); // 100/s, tiny burst
    std::atomic<int> done{0};
    std::vector<std::thread> threads;
    for (int i = 0; i < 4; ++i)
        threads.emplace_back([&] {
            bucket.acquire();
            ++done;
        });
    for (auto& t : threads) t.join();
    CHECK(done == 4);
}

TEST_CASE("live http round-trip against a local server") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        auto j = nlohmann::json::parse(req.body);
        CHECK(j["messages"].size() == 2);
        if (hits <= 1) {
            res.status = 503;
            res.set_content("overloaded", "text/plain");
            return;
        }
        res.set_content(chat_ok_body("server says hi"), "application/json");
    });

    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    HttpChatConfig config;
    config.endpoint = "http://127.0.0.1:" + std::to_string(port);
    config.retry.sleep = [](double) {};
    HttpChatBackend backend(config);
    ChatRequest req{"s", "u", 0.5, 32, 11};
    auto response = backend.complete(req);
    CHECK(response.text == "server says hi");
    CHECK(response.retries == 1);

    CHECK_NOTHROW(probe_endpoint(config.endpoint, 2.0));
    server.stop();
    server_thread.join();
    CHECK_THROWS_AS(probe_endpoint("http://127.0.0.1:1", 0.5), TransportError);
}

TEST_CASE("subprocess tta: script prints a wav path") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "aadg_subproc_test";
    fs::create_directories(dir);

    audio::AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.assign(16000 * 2, 0.2f);
    audio::write_wav(clip, dir / "fixed.wav", audio::WavEncoding::float32);

    SubprocessTtaConfig config;
    config.command = "cat > /dev/null; echo " + (dir / "fixed.wav").string();
    SubprocessTextToAudio backend(config);
    auto back = backend.synthesize({"anything", 2.0, 1});
    CHECK(back.samples == clip.samples);

    SubprocessTtaConfig failing;
    failing.command = "cat > /dev/null; exit 3";
    SubprocessTextToAudio bad(failing);
    CHECK_THROWS_AS(bad.synthesize({"anything", 2.0, 1}), BackendRefusal);

    fs::remove_all(dir);
}

TEST_SUITE_END();
