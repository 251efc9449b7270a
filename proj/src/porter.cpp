// Copyright 2026 The Condensedly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "condensedly/porter.hpp"

#include <initializer_list>
#include <utility>

namespace condensedly {
namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word) {}

  std::string Run() {
    Step1a();
    Step1b();
    Step1c();
    Step2();
    Step3();
    Step4();
    Step5a();
    Step5b();
    return std::move(b_);
  }

 private:
  using Rule = std::pair<std::string_view, std::string_view>;

  // True if b_[i] is a consonant in Porter's sense.
  bool Cons(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !Cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, len).
  int Measure(std::size_t len) const {
    int n = 0;
    std::size_t i = 0;
    while (i < len && Cons(i)) ++i;
    while (i < len) {
      while (i < len && !Cons(i)) ++i;
      if (i >= len) break;
      while (i < len && Cons(i)) ++i;
      ++n;
    }
    return n;
  }

  bool HasVowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!Cons(i)) return true;
    }
    return false;
  }

  bool DoubleCons(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && Cons(len - 1);
  }

  // cvc where the final c is not w, x or y.
  bool Cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!Cons(len - 1) || Cons(len - 2) || !Cons(len - 3)) return false;
    char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool EndsWith(std::string_view suffix) const {
    return b_.size() >= suffix.size() &&
           std::string_view(b_).substr(b_.size() - suffix.size()) == suffix;
  }

  std::size_t StemLen(std::string_view suffix) const {
    return b_.size() - suffix.size();
  }

  void Replace(std::string_view suffix, std::string_view with) {
    b_.resize(StemLen(suffix));
    b_.append(with);
  }

  // Applies the rule with the longest matching suffix, if its measure
  // condition holds. Only that one suffix is considered.
  void ApplyLongest(std::initializer_list<Rule> rules, int min_measure) {
    const Rule* best = nullptr;
    for (const Rule& r : rules) {
      if (EndsWith(r.first) && (!best || r.first.size() > best->first.size())) {
        best = &r;
      }
    }
    if (best && Measure(StemLen(best->first)) > min_measure) {
      Replace(best->first, best->second);
    }
  }

  void Step1a() {
    if (EndsWith("sses")) {
      Replace("sses", "ss");
    } else if (EndsWith("ies")) {
      Replace("ies", "i");
    } else if (EndsWith("ss")) {
      // unchanged
    } else if (EndsWith("s")) {
      Replace("s", "");
    }
  }

  void Step1b() {
    if (EndsWith("eed")) {
      if (Measure(StemLen("eed")) > 0) Replace("eed", "ee");
      return;
    }
    bool stripped = false;
    if (EndsWith("ed") && HasVowel(StemLen("ed"))) {
      Replace("ed", "");
      stripped = true;
    } else if (EndsWith("ing") && HasVowel(StemLen("ing"))) {
      Replace("ing", "");
      stripped = true;
    }
    if (!stripped) return;
    if (EndsWith("at") || EndsWith("bl") || EndsWith("iz")) {
      b_.push_back('e');
    } else if (DoubleCons(b_.size())) {
      char c = b_.back();
      if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
    } else if (Measure(b_.size()) == 1 && Cvc(b_.size())) {
      b_.push_back('e');
    }
  }

  void Step1c() {
    if (EndsWith("y") && HasVowel(StemLen("y"))) b_.back() = 'i';
  }

  void Step2() {
    ApplyLongest({{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
                  {"anci", "ance"}, {"izer", "ize"}, {"abli", "able"},
                  {"alli", "al"}, {"entli", "ent"}, {"eli", "e"},
                  {"ousli", "ous"}, {"ization", "ize"}, {"ation", "ate"},
                  {"ator", "ate"}, {"alism", "al"}, {"iveness", "ive"},
                  {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
                  {"iviti", "ive"}, {"biliti", "ble"}},
                 0);
  }

  void Step3() {
    ApplyLongest({{"icate", "ic"}, {"ative", ""}, {"alize", "al"},
                  {"iciti", "ic"}, {"ical", "ic"}, {"ful", ""}, {"ness", ""}},
                 0);
  }

  void Step4() {
    static constexpr std::string_view kSuffixes[] = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement",
        "ment", "ent", "ion",  "ou",  "ism", "ate",  "iti",  "ous", "ive",
        "ize"};
    std::string_view best;
    for (std::string_view s : kSuffixes) {
      if (EndsWith(s) && s.size() > best.size()) best = s;
    }
    if (best.empty()) return;
    std::size_t stem = StemLen(best);
    if (Measure(stem) <= 1) return;
    if (best == "ion" && !(stem > 0 && (b_[stem - 1] == 's' || b_[stem - 1] == 't'))) {
      return;
    }
    b_.resize(stem);
  }

  void Step5a() {
    if (!EndsWith("e")) return;
    std::size_t stem = StemLen("e");
    int m = Measure(stem);
    if (m > 1 || (m == 1 && !Cvc(stem))) b_.pop_back();
  }

  void Step5b() {
    if (Measure(b_.size()) > 1 && DoubleCons(b_.size()) && b_.back() == 'l') {
      b_.pop_back();
    }
  }

  std::string b_;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  return Stemmer(word).Run();
}

}  // namespace condensedly
