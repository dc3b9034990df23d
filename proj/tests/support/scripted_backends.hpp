#pragma once

// Scripted fakes for driving adapter and pipeline failure paths.

#include <deque>
#include <functional>
#include <string>

#include "aadg/adapters/chat.hpp"
#include "aadg/adapters/http.hpp"
#include "aadg/adapters/tta.hpp"
#include "aadg/errors.hpp"

namespace testsupport {

// Replays a fixed list of replies; repeats the last one when exhausted.
class ScriptedChatBackend : public aadg::adapters::ChatBackend {
public:
    explicit ScriptedChatBackend(std::vector<std::string> replies)
        : replies_(std::move(replies)) {}

    aadg::adapters::ChatResponse complete(const aadg::adapters::ChatRequest& request) override {
        aadg::adapters::validate(request);
        ++calls;
        const auto& text = next_ < replies_.size() ? replies_[next_] : replies_.back();
        if (next_ < replies_.size()) ++next_;
        return {text, "scripted", 0, 0};
    }

    int calls = 0;

private:
    std::vector<std::string> replies_;
    std::size_t next_ = 0;
};

// One scripted HTTP reply (or transport failure) per call.
class ScriptedPoster : public aadg::adapters::HttpPoster {
public:
    struct Step {
        bool transport_failure = false;
        aadg::adapters::HttpReply reply;
    };

    explicit ScriptedPoster(std::vector<Step> steps) : steps_(std::move(steps)) {}

    aadg::adapters::HttpReply post(const std::string&, const std::string& body, const std::string&,
                                   const aadg::adapters::HttpHeaders& headers) override {
        ++calls;
        bodies.push_back(body);
        last_headers = headers;
        const Step& step = next_ < steps_.size() ? steps_[next_] : steps_.back();
        if (next_ < steps_.size()) ++next_;
        if (step.transport_failure) throw aadg::TransportError("scripted transport failure");
        return step.reply;
    }

    int calls = 0;
    std::vector<std::string> bodies;
    aadg::adapters::HttpHeaders last_headers;

private:
    std::vector<Step> steps_;
    std::size_t next_ = 0;
};

// Wraps a function as a text-to-audio backend.
class FnTextToAudio : public aadg::adapters::TextToAudioBackend {
public:
    using Fn = std::function<aadg::audio::AudioClip(const aadg::adapters::SynthesisRequest&)>;
    explicit FnTextToAudio(Fn fn) : fn_(std::move(fn)) {}

    aadg::audio::AudioClip synthesize(const aadg::adapters::SynthesisRequest& request) override {
        return fn_(request);
    }

private:
    Fn fn_;
};

} // namespace testsupport
