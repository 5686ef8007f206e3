#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

#include "driftbench/corpus.hpp"
#include "driftbench/utf8.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

namespace fs = std::filesystem;
using namespace driftbench;

namespace {

using Tokens = std::vector<std::string>;

using testing_support::TempDir;

}  // namespace

TEST(Tokenize, RoseSentence) {
  EXPECT_EQ(tokenize_text("Rose is a rose is a rose is a rose"),
            (Tokens{"rose", "is", "a", "rose", "is", "a", "rose", "is", "a", "rose"}));
}

TEST(Tokenize, EmptyText) { EXPECT_TRUE(tokenize_text("").empty()); }

TEST(Tokenize, InternalHyphenKept) {
  EXPECT_EQ(tokenize_text("common-sense, Stoics!"), (Tokens{"common-sense", "stoics"}));
}

TEST(Tokenize, JoinersOnlyBetweenWordCharacters) {
  EXPECT_EQ(tokenize_text("don't 'quoted' end- -start a--b x''y"),
            (Tokens{"don't", "quoted", "end", "start", "a", "b", "x", "y"}));
}

TEST(Tokenize, TypographicPunctuationNormalized) {
  EXPECT_EQ(tokenize_text("don’t well‐known"), (Tokens{"don't", "well-known"}));
}

TEST(Tokenize, RulesCanDisableJoinsAndNumerals) {
  TokenizerRules rules;
  rules.join_apostrophes = false;
  rules.join_hyphens = false;
  rules.keep_numerals = false;
  EXPECT_EQ(tokenize_text("don't well-known 1920 x2", rules), (Tokens{"don", "t", "well", "known", "x2"}));
}

TEST(Tokenize, NumeralsKeptByDefault) { EXPECT_EQ(tokenize_text("In 1920."), (Tokens{"in", "1920"})); }

TEST(Tokenize, UnicodeLettersLowercased) {
  EXPECT_EQ(tokenize_text("Émile ΣΟΦΙΑ Москва"), (Tokens{"émile", "σοφια", "москва"}));
}

TEST(Tokenize, InvalidUtf8ReportsOffset) {
  const std::string bad = std::string("abc ") + static_cast<char>(0xC3) + "(";
  try {
    tokenize_text(bad);
    FAIL() << "expected EncodingError";
  } catch (const EncodingError& e) {
    EXPECT_EQ(e.offset(), 5u);
    EXPECT_EQ(e.kind(), ErrorKind::data);
  }
}

TEST(Tokenize, RejectsOverlongAndSurrogates) {
  EXPECT_THROW(utf8::validate("\xC0\xAF"), EncodingError);
  EXPECT_THROW(utf8::validate("\xED\xA0\x80"), EncodingError);
  EXPECT_THROW(utf8::validate("\xF4\x90\x80\x80"), EncodingError);
  EXPECT_THROW(utf8::validate("\xE2\x82"), EncodingError);
  EXPECT_NO_THROW(utf8::validate("\xF0\x9F\x98\x80"));
}

TEST(Tokenize, IdempotentOnOwnOutput) {
  const std::vector<std::string> texts{
      "Rose is a rose is a rose is a rose",
      "It's the Well-Lighted café -- \"Nada\" y pues nada; 1933!",
      "a'b'c x-y-z ''' --- Ünïcödé ΑΒΓ",
  };
  Rng rng(11);
  std::vector<std::string> all = texts;
  const std::string alphabet = "ab'- .,A1\t";
  for (int t = 0; t < 200; ++t) {
    std::string s;
    const auto n = rng.below(40);
    for (std::size_t i = 0; i < n; ++i) s += alphabet[rng.below(alphabet.size())];
    all.push_back(s);
  }
  for (const auto& text : all) {
    const auto once = tokenize_text(text);
    std::string joined;
    for (const auto& t : once) joined += t + " ";
    EXPECT_EQ(tokenize_text(joined), once) << text;
    for (const auto& t : once) {
      EXPECT_FALSE(t.empty());
      EXPECT_EQ(t.find_first_of(" \t\n"), std::string::npos);
    }
  }
}

TEST(Vocabulary, RoseMinCountOne) {
  const auto v = build_vocabulary(oracle::rose_streams(), 1);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v.frequency(v.index_of("rose")), 4u);
  EXPECT_EQ(v.frequency(v.index_of("is")), 3u);
  EXPECT_EQ(v.frequency(v.index_of("a")), 3u);
  // Frequency descending, ties lexicographic.
  EXPECT_EQ(v.tokens(), (Tokens{"rose", "a", "is"}));
}

TEST(Vocabulary, RoseMinCountFour) {
  const auto v = build_vocabulary(oracle::rose_streams(), 4);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.token(0), "rose");
  EXPECT_EQ(v.frequency(0), 4u);
}

TEST(Vocabulary, MaxSizeTruncatesWithLexicographicTies) {
  const auto v = build_vocabulary(oracle::rose_streams(), 1, 2);
  EXPECT_EQ(v.tokens(), (Tokens{"rose", "a"}));
}

TEST(Vocabulary, DegenerateCapsAreErrors) {
  EXPECT_THROW(build_vocabulary(oracle::rose_streams(), 1, 0), EmptyVocabularyError);
  EXPECT_THROW(build_vocabulary(oracle::rose_streams(), 5), EmptyVocabularyError);
  EXPECT_THROW(build_vocabulary({}, 1), EmptyVocabularyError);
  EXPECT_THROW(build_vocabulary(oracle::rose_streams(), 0), ConfigError);
}

TEST(Vocabulary, LookupErrorNamesWord) {
  const auto v = build_vocabulary(oracle::rose_streams());
  try {
    v.index_of("tulip");
    FAIL();
  } catch (const LookupError& e) {
    EXPECT_NE(std::string(e.what()).find("tulip"), std::string::npos);
  }
}

TEST(Vocabulary, FrequenciesSumToTokenCount) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto streams = oracle::random_streams(rng, 4, 100, 15);
    const auto v = build_vocabulary(streams);
    EXPECT_EQ(v.total_frequency(), corpus_stats(streams).token_count);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v.index_of(v.token(i)), i);
  }
}

TEST(Vocabulary, ExtendAppendsInFirstAppearanceOrder) {
  const auto base = build_vocabulary(oracle::rose_streams());
  const std::vector<TokenStream> extra{{"b", {"tulip", "rose", "daisy", "tulip"}}};
  const auto v = extend_vocabulary(base, extra);
  EXPECT_EQ(v.tokens(), (Tokens{"rose", "a", "is", "tulip", "daisy"}));
  EXPECT_EQ(v.frequency(0), 5u);
  EXPECT_EQ(v.frequency(3), 2u);
}

TEST(Vocabulary, ExtendHonoursMinCount) {
  auto base = build_vocabulary(oracle::rose_streams(), 3);
  const std::vector<TokenStream> extra{{"b", {"tulip", "daisy", "tulip", "tulip"}}};
  const auto v = extend_vocabulary(base, extra);
  EXPECT_TRUE(v.contains("tulip"));
  EXPECT_FALSE(v.contains("daisy"));
}

TEST(Stopwords, DirectFilter) {
  const TokenStream s{"d", {"rose", "is", "a", "rose"}};
  EXPECT_EQ(remove_stopwords(s, Stoplist{"is", "a"}).tokens, (Tokens{"rose", "rose"}));
  EXPECT_EQ(remove_stopwords(s, Stoplist{}), s);
  EXPECT_EQ(remove_stopwords(TokenStream{"d", {"the", "dog", "barks"}}, Stoplist{"the"}).tokens,
            (Tokens{"dog", "barks"}));
}

TEST(Stats, RoseSentence) {
  const auto st = corpus_stats(oracle::rose_streams());
  EXPECT_EQ(st.token_count, 10u);
  EXPECT_EQ(st.type_count, 3u);
  EXPECT_DOUBLE_EQ(st.type_token_ratio, 0.3);
  EXPECT_TRUE(st.ratio_defined);
}

TEST(Stats, EmptyCorpusFlagsRatio) {
  const auto st = corpus_stats({});
  EXPECT_EQ(st.token_count, 0u);
  EXPECT_EQ(st.type_count, 0u);
  EXPECT_EQ(st.type_token_ratio, 0.0);
  EXPECT_FALSE(st.ratio_defined);
}

TEST(LoadCorpus, DirectoryIsSortedAndCrlfTolerated) {
  TempDir dir;
  dir.write("b.txt", "second\r\nfile");
  dir.write("a.txt", "First file");
  fs::create_directory(dir.path / "nested");
  dir.write("nested/c.txt", "ignored");
  const auto docs = load_corpus(dir.path);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].id, "a.txt");
  EXPECT_EQ(tokenize(docs[1]).tokens, (Tokens{"second", "file"}));
}

TEST(LoadCorpus, Errors) {
  TempDir dir;
  EXPECT_THROW(load_corpus(dir.path), DataError);
  EXPECT_THROW(load_corpus(dir.path / "missing.txt"), DataError);
  const auto bad = dir.write("bad.txt", std::string("ok ") + static_cast<char>(0xFF));
  try {
    load_corpus(bad);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.txt"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("offset 3"), std::string::npos);
  }
}

TEST(LoadCorpus, Stoplist) {
  TempDir dir;
  const auto path = dir.write("stop.txt", "The\r\nA\n\nis\n");
  const auto stop = load_stoplist(path);
  EXPECT_EQ(stop.size(), 3u);
  EXPECT_TRUE(stop.contains("the"));
}
