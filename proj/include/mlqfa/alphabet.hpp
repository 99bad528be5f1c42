#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mlqfa {

/// Input rejected during validation or parsing; `field()` names the offending
/// part of the document or object ("transitions.\"_ a\"", "initial", ...).
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

using Symbol = std::int32_t;
using State = std::size_t;

/// The blank padding letter occupying the first k-1 window positions.
inline constexpr Symbol kBlank = -1;
inline constexpr std::string_view kBlankName = "_";
inline constexpr std::string_view kEndMarkName = "$";

using Word = std::vector<Symbol>;
/// k symbols; a prefix of kBlank entries followed by real symbols.
using Window = std::vector<Symbol>;

class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty()) throw ValidationError("alphabet", "must contain at least one symbol");
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            const auto& s = symbols_[i];
            if (s.empty()) throw ValidationError("alphabet", "empty symbol name");
            if (s == kBlankName || s == kEndMarkName)
                throw ValidationError("alphabet", "'" + s + "' is reserved");
            if (s.find_first_of(" \t\n") != std::string::npos)
                throw ValidationError("alphabet", "symbol '" + s + "' contains whitespace");
            if (!index_.emplace(s, static_cast<Symbol>(i)).second)
                throw ValidationError("alphabet", "duplicate symbol '" + s + "'");
        }
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    bool unary() const noexcept { return symbols_.size() == 1; }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }

    const std::string& name(Symbol s) const {
        if (s < 0 || static_cast<std::size_t>(s) >= symbols_.size())
            throw std::out_of_range("symbol index " + std::to_string(s) + " outside alphabet");
        return symbols_[static_cast<std::size_t>(s)];
    }

    Symbol index(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) throw ValidationError("word", "unknown symbol '" + std::string(name) + "'");
        return it->second;
    }

    bool contains(Symbol s) const noexcept { return s >= 0 && static_cast<std::size_t>(s) < symbols_.size(); }

    /// Space-separated symbol names; the empty string is the empty word.
    Word parse_word(std::string_view text) const {
        Word w;
        std::istringstream in{std::string(text)};
        std::string tok;
        while (in >> tok) w.push_back(index(tok));
        return w;
    }

    std::string format(const Word& w) const {
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out += ' ';
            out += w[i] == kBlank ? std::string(kBlankName) : name(w[i]);
        }
        return out;
    }

    /// Parses "_ _ a b"-style windows of exactly length k.
    Window parse_window(std::string_view text, std::size_t k) const {
        Window w;
        std::istringstream in{std::string(text)};
        std::string tok;
        while (in >> tok) w.push_back(tok == kBlankName ? kBlank : index(tok));
        if (w.size() != k)
            throw ValidationError("window \"" + std::string(text) + "\"",
                                  "expected " + std::to_string(k) + " letters, got " + std::to_string(w.size()));
        std::size_t pads = 0;
        while (pads < w.size() && w[pads] == kBlank) ++pads;
        if (pads == w.size()) throw ValidationError("window \"" + std::string(text) + "\"", "window is all blanks");
        for (std::size_t i = pads; i < w.size(); ++i)
            if (w[i] == kBlank)
                throw ValidationError("window \"" + std::string(text) + "\"", "blank after a real symbol");
        return w;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

private:
    std::vector<std::string> symbols_;
    std::map<std::string, Symbol, std::less<>> index_;
};

/// The window read at step `j` (1-based) of `word` by a k-head machine:
/// Λ^(k-j) σ1..σj while j < k, then σ(j-k+1)..σj.
inline Window window_at(const Word& word, std::size_t j, std::size_t k) {
    Window w(k, kBlank);
    const std::size_t take = std::min(j, k);
    for (std::size_t i = 0; i < take; ++i) w[k - take + i] = word[j - take + i];
    return w;
}

/// Every window a k-head machine can read over an alphabet of `sigma` symbols,
/// blank-padded prefixes first, each group in lexicographic order.
inline std::vector<Window> reachable_windows(std::size_t sigma, std::size_t k) {
    std::vector<Window> out;
    for (std::size_t len = 1; len <= k; ++len) {
        Window w(k, kBlank);
        std::vector<std::size_t> digits(len, 0);
        while (true) {
            for (std::size_t i = 0; i < len; ++i) w[k - len + i] = static_cast<Symbol>(digits[i]);
            out.push_back(w);
            std::size_t pos = len;
            while (pos > 0 && ++digits[pos - 1] == sigma) digits[--pos] = 0;
            if (pos == 0) break;
        }
    }
    return out;
}

/// All words of exactly `len` symbols in lexicographic order.
inline std::vector<Word> words_of_length(std::size_t sigma, std::size_t len) {
    std::vector<Word> out;
    Word w(len, 0);
    while (true) {
        out.push_back(w);
        std::size_t pos = len;
        while (pos > 0 && static_cast<std::size_t>(++w[pos - 1]) == sigma) w[--pos] = 0;
        if (pos == 0) break;
    }
    return out;
}

}  // namespace mlqfa
