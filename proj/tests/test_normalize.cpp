#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "migraine/common.hpp"
#include "migraine/normalize.hpp"
#include "migraine/unicode.hpp"
#include "support.hpp"

using namespace migraine;
using namespace migraine::text;

namespace {

using Tokens = std::vector<std::string>;

Tokens norm(std::string_view s) { return normalize_text(s, SmileyTable::defaults()).tokens; }

std::size_t whitespace_tokens(std::string_view s) {
  std::size_t n = 0;
  bool in = false;
  for (char c : s) {
    const bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!ws && !in) ++n;
    in = !ws;
  }
  return n;
}

}  // namespace

TEST_CASE("rules on the reference examples") {
  CHECK(norm("I have a MIGRAINE https://t.co/x") == Tokens{"i", "have", "a", "migraine", "<allcaps>", "<url>"});
  CHECK(norm("soooo bad :(") == Tokens{"soo", "<elong>", "bad", "<sadface>"});
  CHECK(norm("@doc gave me 2 pills #migraine") ==
        Tokens{"<user>", "gave", "me", "<number>", "pills", "<hashtag>", "migraine"});
  CHECK(norm("").empty());
  CHECK(norm("   \n\t ").empty());
}

TEST_CASE("numbers are standalone only") {
  CHECK(norm("took 2.5 mg") == Tokens{"took", "<number>", "mg"});
  CHECK(norm("b2b deals") == Tokens{"b2b", "deals"});
  CHECK(norm("1,000 steps") == Tokens{"<number>", "steps"});
}

TEST_CASE("single-letter capitals are not all-caps words") {
  CHECK(norm("I") == Tokens{"i"});
  CHECK(norm("OK then") == Tokens{"ok", "<allcaps>", "then"});
}

TEST_CASE("hashtag outranks the other markers") {
  CHECK(norm("#MIGRAINEEEE") == Tokens{"<hashtag>", "migrainee"});
}

TEST_CASE("emoji survive as their own tokens") {
  const auto t = norm("ugh \xF0\x9F\x98\xAD");
  REQUIRE(t.size() == 2);
  CHECK(t[1] == "\xF0\x9F\x98\xAD");
}

TEST_CASE("full case folding") {
  CHECK(norm("Straße") == Tokens{"strasse"});
}

TEST_CASE("output invariants on assorted inputs") {
  const std::vector<std::string> inputs{
      "I have a MIGRAINE https://t.co/x",  "soooo bad :(",       "@doc gave me 2 pills #migraine",
      "WHY IS THIS HAPPENING AGAIN!!!",     "Sumatriptan 50mg :D", "www.example.com and http://x.y/z?q=1",
      "Ça va?? NOOOOO :'( <3",             "#Topamax #2 #",       "a\tb\nc   d"};
  for (const auto& in : inputs) {
    const auto n = normalize_text(in, SmileyTable::defaults());
    CHECK(n.source_length == unicode::length(in));
    CHECK(n.tokens.size() <= 2 * whitespace_tokens(in) + 1);
    for (const auto& tok : n.tokens) {
      CHECK_FALSE(tok.empty());
      if (is_marker_syntax(tok)) continue;
      CHECK(unicode::fold_case(tok) == tok);
    }
  }
}

TEST_CASE("normalization is idempotent on its rendered output") {
  const std::vector<std::string> inputs{"I have a MIGRAINE https://t.co/x", "soooo bad :(",
                                        "@doc gave me 2 pills #migraine",   "WHY IS THIS HAPPENING",
                                        "Sumatriptan 50mg :D <3",           "Ça va?? NOOOOO"};
  for (const auto& in : inputs) {
    const auto once = normalize_text(in, SmileyTable::defaults());
    const auto twice = normalize_text(once.render(), SmileyTable::defaults());
    CHECK(twice.tokens == once.tokens);
  }
}

TEST_CASE("smiley table loading") {
  testsupport::TempDir dir("smileys");
  {
    std::ofstream f(dir / "s.tsv");
    f << "# comment\n:]\t<smile>\n";
  }
  const auto t = SmileyTable::load(dir / "s.tsv");
  REQUIRE(t.find(":]"));
  CHECK(*t.find(":]") == "<smile>");
  {
    std::ofstream f(dir / "dup.tsv");
    f << ":]\t<smile>\n:]\t<sadface>\n";
  }
  CHECK_THROWS_AS(SmileyTable::load(dir / "dup.tsv"), ConfigError);
  {
    std::ofstream f(dir / "bad.tsv");
    f << ":]\tSmile\n";
  }
  CHECK_THROWS_AS(SmileyTable::load(dir / "bad.tsv"), ConfigError);
  CHECK(SmileyTable::defaults().entries().size() >= 12);
}

TEST_CASE("sentence splitting examples") {
  CHECK(split_sentences("I took Imitrex. It worked!") == Tokens{"I took Imitrex.", "It worked!"});
  CHECK(split_sentences("Hello") == Tokens{"Hello"});
  CHECK(split_sentences("") == Tokens{});
  const auto s = split_sentences(
      "I've had 19 headache/migraine days in the last month. I just started Aimovig on Tuesday");
  REQUIRE(s.size() == 2);
  CHECK(s[1] == "I just started Aimovig on Tuesday");
}

TEST_CASE("no split inside URLs, numbers or after protected abbreviations") {
  CHECK(split_sentences("See https://example.com/a.b?c=d. Then rest.") ==
        Tokens{"See https://example.com/a.b?c=d.", "Then rest."});
  CHECK(split_sentences("Take 2.5 mg. daily e.g. after food. Dr. Smith agreed") ==
        Tokens{"Take 2.5 mg. daily e.g. after food.", "Dr. Smith agreed"});
  CHECK(split_sentences("Why?!? Because\n\nyes") == Tokens{"Why?!?", "Because", "yes"});
}

TEST_CASE("sentence count and coverage invariants") {
  const std::vector<std::string> inputs{
      "I took Imitrex. It worked!", "No terminator here", "a.b.c. d! e? f\ng",
      "Dr. No... Mr. Yes!!! www.x.com. 3.14 is pi. ok", "...", "\n\n\nx\n"};
  for (const auto& in : inputs) {
    const auto sents = split_sentences(in);
    std::size_t terminators = 0;
    for (char c : in) terminators += (c == '.' || c == '!' || c == '?' || c == '\n');
    CHECK(sents.size() <= terminators + 1);

    std::string joined, expected;
    for (const auto& s : sents) {
      CHECK_FALSE(trim(s).empty());
      CHECK(trim(s) == s);
      joined += s;
    }
    for (char c : in) {
      if (std::isalnum(static_cast<unsigned char>(c))) expected += c;
    }
    std::string got;
    for (char c : joined) {
      if (std::isalnum(static_cast<unsigned char>(c))) got += c;
    }
    CHECK(got == expected);
  }
}

TEST_CASE("abbreviation list") {
  auto a = AbbreviationList::defaults();
  CHECK(a.contains("e.g."));
  CHECK(a.contains("dr."));
  CHECK(a.contains("mg."));
  a.add("approx.");
  CHECK(split_sentences("approx. three hours", a) == Tokens{"approx. three hours"});
}
