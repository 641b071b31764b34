/*
   Copyright 2026 The ga2 Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GA2_WORD_HPP
#define GA2_WORD_HPP

#include <vector>

#include "maps.hpp"

namespace ga2 {

/// One letter of a word over the two factors (the basic group lies in both).
using Letter = std::variant<AffineMap, ElementaryMap, BasicMap>;

inline const FieldCtx& letter_ctx(const Letter& l) {
    return std::visit([](const auto& m) -> const FieldCtx& { return m.ctx(); }, l);
}

inline PolyMap letter_to_polymap(const Letter& l) {
    return std::visit([](const auto& m) { return to_polymap(m); }, l);
}

inline AffineMap invert_letter(const AffineMap& a) { return a.inverse(); }
inline ElementaryMap invert_letter(const ElementaryMap& e) { return e.inverse(); }
inline BasicMap invert_letter(const BasicMap& b) { return b.inverse(); }

inline Letter invert_letter(const Letter& l) {
    return std::visit([](const auto& m) -> Letter { return m.inverse(); }, l);
}

/// A word of letters in composition order: letters.front() is applied last
/// (the word g_n o ... o g_1 stores g_n first).
class Word {
   public:
    explicit Word(const FieldCtx& ctx) : ctx_(ctx) {}

    Word(const FieldCtx& ctx, std::vector<Letter> letters)
        : ctx_(ctx), letters_(std::move(letters)) {
        for (const auto& l : letters_)
            if (letter_ctx(l) != ctx_) throw FieldMismatch("word letter");
    }

    static Word identity(const FieldCtx& ctx) { return Word(ctx); }

    const FieldCtx& ctx() const noexcept { return ctx_; }
    const std::vector<Letter>& letters() const noexcept { return letters_; }
    bool empty() const noexcept { return letters_.empty(); }
    std::size_t size() const noexcept { return letters_.size(); }

    void push_outer(const Letter& l) { letters_.insert(letters_.begin(), l); }
    void push_inner(const Letter& l) { letters_.push_back(l); }

    /// this o other (apply other first).
    Word concat(const Word& other) const {
        Word r(*this);
        r.letters_.insert(r.letters_.end(), other.letters_.begin(), other.letters_.end());
        return r;
    }

    Word inverse() const {
        Word r(ctx_);
        r.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            r.letters_.push_back(invert_letter(*it));
        return r;
    }

   private:
    FieldCtx ctx_;
    std::vector<Letter> letters_;
};

/// Letter of a normal form: an affine or elementary coset representative.
using NFLetter = std::variant<CosetRepA, CosetRepE>;

inline bool is_a_letter(const NFLetter& l) {
    return std::holds_alternative<CosetRepA>(l);
}

inline Letter nf_letter_to_letter(const NFLetter& l) {
    if (is_a_letter(l)) return AffineMap(std::get<CosetRepA>(l).to_affine());
    return ElementaryMap(std::get<CosetRepE>(l).to_elementary());
}

/// The unique representation b o a_m o e_m o ... o a_1 o e_1 over the coset
/// representatives, stored left to right (outermost first) after the leading
/// basic element. Letters strictly alternate between the two factors.
class NormalForm {
   public:
    explicit NormalForm(const FieldCtx& ctx)
        : b_(BasicMap::identity(ctx)) {}

    NormalForm(BasicMap b, std::vector<NFLetter> letters)
        : b_(std::move(b)), letters_(std::move(letters)) {
        for (std::size_t i = 0; i + 1 < letters_.size(); ++i)
            if (is_a_letter(letters_[i]) == is_a_letter(letters_[i + 1]))
                throw InvalidLetters("normal form letters must alternate");
    }

    const FieldCtx& ctx() const noexcept { return b_.ctx(); }
    const BasicMap& basic() const noexcept { return b_; }
    const std::vector<NFLetter>& letters() const noexcept { return letters_; }

    bool is_basic() const noexcept { return letters_.empty(); }
    bool leading_a_present() const {
        return !letters_.empty() && is_a_letter(letters_.front());
    }
    bool trailing_e_present() const {
        return !letters_.empty() && !is_a_letter(letters_.back());
    }

    Word to_word() const {
        Word w(ctx());
        if (!b_.is_identity() || letters_.empty()) w.push_inner(Letter(b_));
        for (const auto& l : letters_) w.push_inner(nf_letter_to_letter(l));
        return w;
    }

    bool operator==(const NormalForm& o) const {
        return b_ == o.b_ && letters_ == o.letters_;
    }
    bool operator!=(const NormalForm& o) const { return !(*this == o); }

   private:
    BasicMap b_;
    std::vector<NFLetter> letters_;
};

/// Total count of coset-representative letters; 0 for basic elements.
inline std::size_t length(const NormalForm& nf) { return nf.letters().size(); }

/// Cyclically reduced = even positive length (the word alternates around a
/// circle exactly when its ends lie in different factors).
inline bool is_cyclically_reduced(const NormalForm& nf) {
    return length(nf) > 0 && length(nf) % 2 == 0;
}

inline PolyMap word_to_polymap(const Word& w) {
    PolyMap m = PolyMap::identity(w.ctx());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
        m = compose(letter_to_polymap(*it), m);
    return m;
}

inline PolyMap word_to_polymap(const NormalForm& nf) {
    return word_to_polymap(nf.to_word());
}

/// Serialization: one letter per line. `B alpha beta gamma u v`, `A beta`,
/// `E <unipoly>`. An identity leading basic is omitted unless the element
/// itself is the identity. Round-trips bit-exactly (see parse.hpp).
inline std::string serialize(const NormalForm& nf, const char* sep = "\n") {
    std::string out;
    auto emit = [&](const std::string& line) {
        if (!out.empty()) out += sep;
        out += line;
    };
    const BasicMap& b = nf.basic();
    if (!b.is_identity() || nf.letters().empty())
        emit("B " + b.alpha().to_string() + " " + b.beta().to_string() + " " +
             b.gamma().to_string() + " " + b.u().to_string() + " " + b.v().to_string());
    for (const auto& l : nf.letters()) {
        if (is_a_letter(l))
            emit("A " + std::get<CosetRepA>(l).beta.to_string());
        else
            emit("E " + std::get<CosetRepE>(l).p.to_string());
    }
    return out;
}

}  // namespace ga2

#endif  // GA2_WORD_HPP
