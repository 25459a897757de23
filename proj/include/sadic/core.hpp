/*
 * core.hpp
 *
 * Alphabets, finite words and lazily extended word streams.
 *
 * An Alphabet is an ordered finite list of distinct symbols; the order fixes
 * the coordinates used by incidence matrices and frequency vectors.  Letters
 * are handled internally as indices (letter_t) into that list.  A WordStream
 * is an immutable handle on a lazily grown prefix buffer: prefix(n) always
 * returns the same first n letters, or fails with the available length when
 * the stream is finite and shorter.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sadic {

using letter_t = std::uint32_t;

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* Violated operation precondition; the CLI maps these to exit code 2. */
class precondition_error : public error {
public:
    using error::error;
};

class alphabet_mismatch : public precondition_error {
public:
    using precondition_error::precondition_error;
};

/* Finite stream shorter than a requested prefix. Carries what is available. */
class short_stream : public precondition_error {
public:
    short_stream(std::size_t requested, std::size_t available)
        : precondition_error("short stream: requested prefix of length " +
                             std::to_string(requested) + " but only " +
                             std::to_string(available) + " letters are available"),
          requested_(requested), available_(available) {}
    std::size_t requested() const { return requested_; }
    std::size_t available() const { return available_; }

private:
    std::size_t requested_;
    std::size_t available_;
};

class Alphabet {
public:
    Alphabet() : data_(empty_data()) {}

    static Alphabet from_letters(std::vector<std::string> letters) {
        auto data = std::make_shared<Data>();
        data->letters = std::move(letters);
        if (data->letters.empty())
            throw precondition_error("alphabet: must contain at least one letter");
        for (std::size_t i = 0; i < data->letters.size(); ++i) {
            if (data->letters[i].empty())
                throw precondition_error("alphabet: empty letter at index " + std::to_string(i));
            auto [_, fresh] = data->index.emplace(data->letters[i], static_cast<letter_t>(i));
            if (!fresh)
                throw precondition_error("alphabet: duplicate letter '" + data->letters[i] + "'");
        }
        return Alphabet(std::move(data));
    }

    /* a, b, c, ... (d <= 26) */
    static Alphabet latin(std::size_t d) {
        if (d == 0 || d > 26)
            throw precondition_error("alphabet: latin() supports 1..26 letters");
        std::vector<std::string> v;
        for (std::size_t i = 0; i < d; ++i) v.push_back(std::string(1, char('a' + i)));
        return from_letters(std::move(v));
    }

    /* "1", "2", ..., "d" */
    static Alphabet numeric(std::size_t d) {
        std::vector<std::string> v;
        for (std::size_t i = 1; i <= d; ++i) v.push_back(std::to_string(i));
        return from_letters(std::move(v));
    }

    std::size_t size() const { return data_->letters.size(); }
    const std::string& letter(letter_t i) const { return data_->letters.at(i); }
    const std::vector<std::string>& letters() const { return data_->letters; }

    std::optional<letter_t> index(std::string_view s) const {
        auto it = data_->index.find(std::string(s));
        if (it == data_->index.end()) return std::nullopt;
        return it->second;
    }

    letter_t index_checked(std::string_view s) const {
        auto i = index(s);
        if (!i)
            throw precondition_error("alphabet: unknown letter '" + std::string(s) + "'");
        return *i;
    }

    bool single_char() const {
        for (const auto& l : data_->letters)
            if (l.size() != 1) return false;
        return true;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.data_ == b.data_ || a.data_->letters == b.data_->letters;
    }
    friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }

private:
    struct Data {
        std::vector<std::string> letters;
        std::map<std::string, letter_t, std::less<>> index;
    };

    explicit Alphabet(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

    static std::shared_ptr<const Data> empty_data() {
        static std::shared_ptr<const Data> d = [] {
            auto p = std::make_shared<Data>();
            p->letters.push_back("a");
            p->index.emplace("a", 0);
            return p;
        }();
        return d;
    }

    std::shared_ptr<const Data> data_;
};

class FiniteWord {
public:
    FiniteWord() = default;
    FiniteWord(Alphabet alphabet, std::vector<letter_t> letters)
        : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
        for (letter_t l : letters_)
            if (l >= alphabet_.size())
                throw precondition_error("word: letter index " + std::to_string(l) +
                                         " out of range for alphabet of size " +
                                         std::to_string(alphabet_.size()));
    }

    /* Parse either one letter per character or whitespace-separated letters. */
    static FiniteWord parse(const Alphabet& alphabet, std::string_view text) {
        std::vector<letter_t> letters;
        if (text.find_first_of(" \t\r\n") != std::string_view::npos || !alphabet.single_char()) {
            std::istringstream in{std::string(text)};
            std::string tok;
            while (in >> tok) letters.push_back(alphabet.index_checked(tok));
        } else {
            for (char c : text) letters.push_back(alphabet.index_checked(std::string_view(&c, 1)));
        }
        return FiniteWord(alphabet, std::move(letters));
    }

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    letter_t operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<letter_t>& letters() const { return letters_; }

    FiniteWord subword(std::size_t pos, std::size_t len) const {
        return FiniteWord(alphabet_, std::vector<letter_t>(letters_.begin() + pos,
                                                           letters_.begin() + pos + len));
    }

    FiniteWord& append(const FiniteWord& other) {
        letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
        return *this;
    }

    std::string str() const {
        std::string out;
        bool compact = alphabet_.single_char();
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (!compact && i) out += ' ';
            out += alphabet_.letter(letters_[i]);
        }
        return out;
    }

    friend bool operator==(const FiniteWord& a, const FiniteWord& b) {
        return a.letters_ == b.letters_ && a.alphabet_ == b.alphabet_;
    }
    friend bool operator!=(const FiniteWord& a, const FiniteWord& b) { return !(a == b); }
    /* lexicographic by letter index; used for deterministic factor ordering */
    friend bool operator<(const FiniteWord& a, const FiniteWord& b) {
        return a.letters_ < b.letters_;
    }

private:
    Alphabet alphabet_;
    std::vector<letter_t> letters_;
};

/* occurrence counts per letter; components sum to |w| */
inline std::vector<long long> abelianize(const FiniteWord& w) {
    std::vector<long long> counts(w.alphabet().size(), 0);
    for (letter_t l : w.letters()) ++counts[l];
    return counts;
}

/*
 * Lazily extended word.  The extender grows the shared buffer toward a target
 * length and returns false once the stream is exhausted (finite word).  All
 * observable state is behind a mutex, so concurrent reads are safe and
 * prefix consistency is automatic.
 */
class WordStream {
public:
    /* extend(buf, target): grow buf to >= target letters if possible */
    using Extender = std::function<bool(std::vector<letter_t>&, std::size_t)>;

    WordStream() = default;

    WordStream(Alphabet alphabet, Extender extend, std::string description = "")
        : alphabet_(std::move(alphabet)),
          state_(std::make_shared<State>()),
          description_(std::move(description)) {
        state_->extend = std::move(extend);
    }

    static WordStream from_word(FiniteWord w, std::string description = "") {
        WordStream s(w.alphabet(), Extender{}, std::move(description));
        s.state_->buffer = w.letters();
        s.state_->exhausted = true;
        return s;
    }

    static WordStream constant(const Alphabet& alphabet, letter_t l) {
        return WordStream(alphabet, [l](std::vector<letter_t>& buf, std::size_t target) {
            while (buf.size() < target) buf.push_back(l);
            return true;
        }, "constant " + alphabet.letter(l));
    }

    const Alphabet& alphabet() const { return alphabet_; }
    const std::string& description() const { return description_; }

    /* First n letters as indices; throws short_stream if fewer exist. */
    std::vector<letter_t> prefix_letters(std::size_t n) const {
        std::lock_guard<std::mutex> lock(state_->mutex);
        ensure_locked(n);
        if (state_->buffer.size() < n) throw short_stream(n, state_->buffer.size());
        return std::vector<letter_t>(state_->buffer.begin(), state_->buffer.begin() + n);
    }

    FiniteWord prefix(std::size_t n) const { return FiniteWord(alphabet_, prefix_letters(n)); }

    /* Available length if the stream has declared itself finite. */
    std::optional<std::size_t> finite_length() const {
        std::lock_guard<std::mutex> lock(state_->mutex);
        if (state_->exhausted) return state_->buffer.size();
        return std::nullopt;
    }

    bool valid() const { return state_ != nullptr; }

private:
    struct State {
        std::mutex mutex;
        std::vector<letter_t> buffer;
        bool exhausted = false;
        Extender extend;
    };

    void ensure_locked(std::size_t n) const {
        if (state_->buffer.size() >= n || state_->exhausted) return;
        if (!state_->extend) { state_->exhausted = true; return; }
        if (!state_->extend(state_->buffer, n)) state_->exhausted = true;
    }

    Alphabet alphabet_;
    std::shared_ptr<State> state_;
    std::string description_;
};

}  // namespace sadic
