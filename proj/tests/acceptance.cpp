// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "migraine/bias.hpp"
#include "migraine/classify.hpp"
#include "migraine/cli.hpp"
#include "migraine/evaluate.hpp"
#include "migraine/lexicon.hpp"
#include "migraine/log.hpp"
#include "migraine/sentiment.hpp"
#include "support.hpp"

using namespace migraine;
namespace fs = std::filesystem;
using testsupport::make_post;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failing check and keeps going.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      first_failure_ = what;
    }
  }
  Outcome done(std::string detail) const {
    return {pass_, pass_ ? std::move(detail) : "first failure: " + first_failure_ + "; " + detail};
  }

 private:
  bool pass_ = true;
  std::string first_failure_;
};

int run_quiet(const std::vector<std::string>& argv) {
  std::ostringstream out, err;
  const int rc = cli::run_command(argv, out, err);
  if (rc != 0) std::fprintf(stderr, "%s", err.str().c_str());
  return rc;
}

std::map<std::string, std::string> bundle_contents(const fs::path& dir) {
  std::map<std::string, std::string> m;
  for (const auto& e : fs::directory_iterator(dir)) m[e.path().filename().string()] = read_file(e.path());
  return m;
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

classify::Model single_feature_model(std::string_view token, double weight, double bias) {
  classify::Model m;
  m.hp.word_ngram_min = m.hp.word_ngram_max = 1;
  m.hp.char_ngram_max = 0;
  m.hp.hash_dim = 1u << 12;
  m.hp.normalize_features = false;
  m.weights.assign(m.hp.hash_dim, 0.0);
  m.weights[classify::fnv1a64("w1:" + std::string(token)) & (m.hp.hash_dim - 1)] = weight;
  m.bias = bias;
  return m;
}

// 1 -------------------------------------------------------------------------
Outcome end_to_end_determinism() {
  Checker c;
  const auto config = (testsupport::fixtures_dir() / "reddit" / "config.json").string();
  const std::vector<std::string> stages{"ingest", "split",     "train", "classify", "evaluate",
                                        "cohort", "sentiment", "bias",  "report"};
  testsupport::TempDir a("accept-a"), b("accept-b");
  double worst_seconds = 0;
  for (const auto* dir : {&a, &b}) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& s : stages) c.expect(run_quiet({s, "--config", config, "--out", dir->path().string()}) == 0, s);
    worst_seconds = std::max(worst_seconds,
                             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  const auto posts = corpus::read_posts(a / "ingest/posts.jsonl");
  std::size_t pos = 0, neg = 0;
  for (const auto& p : posts) (p.label == Label::positive ? pos : neg)++;
  c.expect(pos == 226 && neg == 76, "fixture label counts 226/76");
  c.expect(worst_seconds < 60.0, "runtime under 60 s");
  const auto ba = bundle_contents(a / "report");
  const auto bb = bundle_contents(b / "report");
  c.expect(ba == bb, "byte-identical bundles");
  return c.done(fmt::format("{} posts ({} Y / {} N), {} bundle files identical, slowest run {:.2f} s", posts.size(), pos,
                            neg, ba.size(), worst_seconds));
}

// 2 -------------------------------------------------------------------------
Outcome split_protocol() {
  Checker c;
  Rng rng(2024);
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 400; n += 1 + static_cast<std::size_t>(rng.below(3))) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto positives = static_cast<std::size_t>(rng.below(n + 1));
      std::vector<corpus::Post> data;
      for (std::size_t i = 0; i < n; ++i) {
        auto p = make_post(std::to_string(i), "t");
        p.label = i < positives ? Label::positive : Label::negative;
        data.push_back(p);
      }
      const auto s = classify::split_dataset(data, {}, rng.next());
      const double nn = static_cast<double>(n);
      c.expect(std::fabs(static_cast<double>(s.train.size()) - std::floor(0.64 * nn + 1e-9)) <= 1, "train size");
      c.expect(std::fabs(static_cast<double>(s.validation.size()) - std::floor(0.16 * nn + 1e-9)) <= 1, "val size");
      const double rest = nn - std::floor(0.64 * nn + 1e-9) - std::floor(0.16 * nn + 1e-9);
      c.expect(std::fabs(static_cast<double>(s.test.size()) - rest) <= 1, "test size");
      c.expect(s.train.size() + s.validation.size() + s.test.size() == n, "exhaustive");
      for (const auto* part : {&s.train, &s.validation, &s.test}) {
        double k = 0;
        for (const auto& p : *part) k += p.label == Label::positive;
        const double expected = static_cast<double>(part->size()) * static_cast<double>(positives) / nn;
        c.expect(std::fabs(k - expected) <= 1.0, fmt::format("label proportion n={} pos={}", n, positives));
      }
      ++cases;
    }
  }
  return c.done(fmt::format("{} random labeled sets, n in [1, 400]", cases));
}

// 3 -------------------------------------------------------------------------
Outcome classifier_sanity() {
  Checker c;
  const std::vector<std::string> meds{"rizatriptan", "Imitrex", "Topamax", "Aimovig", "Nurtec", "Botox", "Maxalt"};
  const std::vector<std::string> self{
      "couldnt get all my work done yesterday because of a migraine so working extra hard today",
      "{m} my beloved",
      "I used to get migraines monthly and they were bad when I was on the implant",
      "I usually wake up with that migraine on weekends",
      "my migraine is back and I took {m} an hour ago",
      "high on {m} and leftover sushi, my head still hurts",
      "I have had a migraine since this morning",
      "my {m} finally kicked in, I can see again",
  };
  const std::vector<std::string> other{
      "Who else gets migraines? Do you ever get a weird feeling when it is going away",
      "How is headache treated in the emergency room? Study shows {m} use is still rare",
      "Company announced that {m} met its primary end point in a phase 3 migraine trial",
      "New guidelines on migraine treatment were published today",
      "You shouldn't be allowed to wake up with a migraine",
      "Researchers report {m} reduces monthly migraine days versus placebo",
      "Migraine awareness week starts on Monday",
      "Clinic now offers {m} for chronic migraine patients",
  };
  const std::vector<std::string> tails{"", " today", " again", " this week", " lol", " ugh", " #migraine", " :("};
  Rng rng(3);
  std::vector<corpus::Post> data;
  for (int i = 0; i < 400; ++i) {
    const bool positive = i % 2 == 0;
    const auto& pool = positive ? self : other;
    std::string t = pool[rng.below(pool.size())];
    if (auto at = t.find("{m}"); at != std::string::npos) t.replace(at, 3, meds[rng.below(meds.size())]);
    t += tails[rng.below(tails.size())];
    auto p = make_post("s" + std::to_string(i), t, corpus::Platform::twitter, "u" + std::to_string(i % 50), i);
    p.label = positive ? Label::positive : Label::negative;
    data.push_back(p);
  }
  const auto split = classify::split_dataset(data, {}, 13);
  classify::Hyperparams hp;
  hp.seed = 13;
  const auto model = classify::train(split, hp);
  std::vector<Label> pred, gold;
  for (const auto& p : split.test) {
    pred.push_back(classify::classify_post(model, p).label);
    gold.push_back(*p.label);
  }
  const auto m = eval::compute_metrics(pred, gold);
  c.expect(m.f1 >= 0.95, "held-out F1 >= 0.95");

  std::vector<double> recorded;
  for (const auto& e : model.metadata.epochs) recorded.push_back(e.validation_f1);
  c.expect(model.metadata.epochs.size() == 10, "ten epochs recorded");
  const double best = *std::max_element(recorded.begin(), recorded.end());
  c.expect(recorded[static_cast<std::size_t>(model.metadata.selected_epoch - 1)] == best, "model keeps argmax epoch");

  // Injected per-epoch scores: the selection must be the (earliest) argmax.
  std::size_t injected = 0;
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> f1(10);
    for (auto& x : f1) x = static_cast<double>(rng.below(8)) / 7.0;
    const auto k = classify::select_checkpoint(f1);
    const auto argmax = static_cast<std::size_t>(std::max_element(f1.begin(), f1.end()) - f1.begin());
    c.expect(k == argmax, "select_checkpoint == argmax");
    ++injected;
  }
  return c.done(fmt::format("test n={} F1={:.4f} (P={:.4f} R={:.4f}); selected epoch {}; {} injected score vectors",
                            split.test.size(), m.f1, m.precision, m.recall, model.metadata.selected_epoch, injected));
}

// 4 -------------------------------------------------------------------------
Outcome sentence_aggregation() {
  Checker c;
  const auto smileys = text::SmileyTable::defaults();
  const auto abbrev = text::AbbreviationList::defaults();
  std::size_t patterns = 0;
  for (int k = 1; k <= 5; ++k) {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::map<std::string, double> score;
      std::string text;
      double expected = 0;
      for (int i = 0; i < k; ++i) {
        const std::string s = fmt::format("Sentence {} here.", static_cast<char>('A' + i));
        const double v = (mask >> i) & 1u ? 0.5 + 0.1 * i : 0.49 - 0.1 * i;
        score[s] = v;
        expected = std::max(expected, v);
        text += (i ? " " : "") + s;
      }
      const auto pred = classify::classify_with([&](std::string_view s) { return score.at(std::string(s)); },
                                                make_post("p", text, corpus::Platform::reddit), 0.5, 64, smileys,
                                                abbrev);
      c.expect((pred.label == Label::positive) == (mask != 0), fmt::format("label k={} mask={}", k, mask));
      c.expect(pred.score == expected, fmt::format("score k={} mask={}", k, mask));
      ++patterns;
    }
  }
  return c.done(fmt::format("{} sentence-label patterns, k = 1..5", patterns));
}

// 5 -------------------------------------------------------------------------
Outcome metrics_oracle() {
  Checker c;
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const auto n = static_cast<std::size_t>(rng.below(201));
    const double pg = rng.unit(), pp = rng.unit();
    std::vector<Label> pred(n), gold(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = rng.unit() < pg ? Label::positive : Label::negative;
      pred[i] = rng.unit() < pp ? Label::positive : Label::negative;
    }
    const auto m = eval::compute_metrics(pred, gold);
    const auto o = testsupport::count_confusion(pred, gold);
    c.expect(m.tp == o.tp && m.fp == o.fp && m.fn == o.fn && m.tn == o.tn, fmt::format("counts trial {}", t));
    const double p = o.tp + o.fp ? static_cast<double>(o.tp) / (o.tp + o.fp) : 0.0;
    const double r = o.tp + o.fn ? static_cast<double>(o.tp) / (o.tp + o.fn) : 0.0;
    c.expect(m.precision == p && m.recall == r, fmt::format("ratios trial {}", t));
  }
  const double f1 = eval::f1_from(0.88, 0.91);
  c.expect(std::fabs(f1 - 0.8947) <= 1e-4, "F1(0.88, 0.91)");
  return c.done(fmt::format("1000 random sets exact; F1(0.88, 0.91) = {:.6f}", f1));
}

// 6 -------------------------------------------------------------------------
Outcome bootstrap_ci() {
  Checker c;
  std::vector<Label> g(200);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = i % 3 ? Label::positive : Label::negative;
  const auto perfect = eval::bootstrap_f1_ci(g, g, 1000, 0.95, 1);
  c.expect(perfect.lo == 1.0 && perfect.hi == 1.0, "perfect predictions give [1, 1]");

  // Balanced gold; every fifth prediction flipped, so accuracy is exactly 80%.
  auto half_width = [](std::size_t n) {
    std::vector<Label> gold(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = i % 2 ? Label::positive : Label::negative;
      pred[i] = i % 5 == 0 ? (gold[i] == Label::positive ? Label::negative : Label::positive) : gold[i];
    }
    const auto ci = eval::bootstrap_f1_ci(pred, gold, 1000, 0.95, 11);
    return (ci.hi - ci.lo) / 2.0;
  };
  const double h100 = half_width(100), h1600 = half_width(1600);
  const double ratio = h100 / h1600;
  c.expect(ratio >= 3.0 && ratio <= 5.0, "half-width ratio within 4 +/- 25%");
  return c.done(fmt::format("perfect [{}, {}]; half-width n=100 {:.4f}, n=1600 {:.4f}, ratio {:.3f}", perfect.lo,
                            perfect.hi, h100, h1600, ratio));
}

// 7 -------------------------------------------------------------------------
Outcome sentiment_oracle() {
  Checker c;
  const auto lex = sentiment::SentimentLexicon::load(testsupport::data_dir() / "sentiment_lexicon.tsv",
                                                     testsupport::data_dir() / "emoji_lexicon.tsv");
  std::ifstream f(testsupport::source_dir() / "tests/data/sentiment_oracle.tsv");
  std::string line;
  std::size_t rows = 0;
  double worst = 0;
  while (std::getline(f, line)) {
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) continue;
    const double expected = std::stod(line.substr(tab + 1));
    const double got = sentiment::score_text(line.substr(0, tab), lex);
    worst = std::max(worst, std::fabs(got - expected));
    c.expect(got >= -1.0 && got <= 1.0, "range");
    ++rows;
  }
  c.expect(rows == 100, "100 oracle sentences");
  c.expect(worst <= 1e-6, "oracle agreement");
  const double botox = sentiment::score_text(
      "Botox was approved for migraines!! Slowly but surely i'm making my symptoms manageable/not constant", lex);
  c.expect(botox > 0.0, "Botox-approval example positive");
  return c.done(fmt::format("{} sentences, max |delta| = {:.3g}; Botox example {:.4f}", rows, worst, botox));
}

// 8 -------------------------------------------------------------------------
Outcome median_selection() {
  Checker c;
  std::size_t perms = 0;
  Rng rng(8);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int variant = 0; variant < 3; ++variant) {
      std::vector<double> scores(n);
      for (auto& s : scores) s = variant == 0 ? rng.unit() * 2 - 1 : static_cast<double>(rng.below(3)) / 2 - 0.5;
      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      do {
        std::vector<sentiment::ScoredPost> posts;
        for (std::size_t i = 0; i < n; ++i) {
          posts.push_back({make_post("id" + std::to_string(perm[i]), "t", corpus::Platform::twitter, "u",
                                     static_cast<std::int64_t>(perm[i]) * 60000),
                           scores[perm[i]]});
        }
        const auto& chosen = sentiment::select_user_representative(posts);
        const double med = testsupport::order_statistic_median(scores);
        c.expect(chosen.score == med, "order statistic");
        for (const auto& p : posts) {
          if (p.score == med) c.expect(chosen.post.created_at <= p.post.created_at, "earliest among ties");
        }
        ++perms;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return c.done(fmt::format("{} permutations over n = 1..6, with and without ties", perms));
}

// 9 -------------------------------------------------------------------------
Outcome group_statistics() {
  Checker c;
  const auto config = testsupport::fixtures_dir() / "reddit_groups" / "config.json";
  testsupport::TempDir out("accept-groups");
  for (const char* s : {"ingest", "cohort", "sentiment"}) {
    c.expect(run_quiet({s, "--config", config.string(), "--out", out.path().string()}) == 0, s);
  }
  const std::map<std::string, std::size_t> table6{
      {"Topiramate", 32}, {"Beta Blockers", 18}, {"Tricyclic antidepressants", 30}, {"OnabotulinumtoxinA", 41},
      {"CGRP monoclonal antibodies", 41}, {"Gepants", 39}, {"Triptans", 64}};
  std::map<std::string, std::size_t> got;
  {
    std::ifstream f(out / "sentiment/group_stats.csv");
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
      const auto cols = parse_csv_line(line);
      if (cols.size() == 5) got[cols[0]] = std::stoul(cols[1]);
    }
  }
  c.expect(got == table6, "frequencies equal the Reddit row");

  // Closed-form statistics on the same cohort, computed in process.
  const auto cfg = cli::load_config(config, {.out = out.path()});
  const auto meds = lexicon::MedicationLexicon::build(lexicon::MedicationConfig::load(*cfg.medications), 1,
                                                      lexicon::MisspellingFilters::load_blocklist(*cfg.blocklist),
                                                      lexicon::KeyboardLayout::load(*cfg.keyboard));
  const auto lex = sentiment::SentimentLexicon::load(cfg.sentiment_lexicon, cfg.emoji_lexicon);
  const auto cohort = corpus::read_posts(out / "cohort/positive_posts.jsonl");
  const auto entries = sentiment::build_group_entries(cohort, sentiment::SentimentMode::per_post, meds, lex);
  const auto stats = sentiment::aggregate_group_stats(entries, meds);
  double worst = 0;
  for (const auto& s : stats) {
    std::vector<double> xs;
    for (const auto& e : entries) {
      if (meds.group_name(e.group) == s.group) xs.push_back(e.score);
    }
    long double sum = 0;
    for (double x : xs) sum += x;
    const long double mu = sum / xs.size();
    long double ss = 0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    const double sd = xs.size() > 1 ? static_cast<double>(std::sqrt(ss / (xs.size() - 1))) : 0.0;
    worst = std::max({worst, std::fabs(s.mean - static_cast<double>(mu)),
                      std::fabs(s.median - testsupport::order_statistic_median(xs)), std::fabs(s.std - sd)});
    c.expect(s.frequency == xs.size(), "frequency = entry count");
  }
  c.expect(worst <= 1e-9, "closed-form agreement");
  std::string freq;
  for (const auto& s : stats) freq += fmt::format("{}{}={}", freq.empty() ? "" : ", ", s.group, s.frequency);
  return c.done(fmt::format("{}; max closed-form deviation {:.3g}", freq, worst));
}

// 10 ------------------------------------------------------------------------
Outcome kde() {
  Checker c;
  Rng rng(10);
  double worst_point = 0, worst_integral = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> xs(1 + rng.below(60));
    for (auto& x : xs) x = std::clamp(rng.unit() * 2 - 1, -1.0, 1.0);
    const auto curve = sentiment::estimate_density(xs);
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
      worst_point = std::max(worst_point,
                             std::fabs(curve.density[i] - testsupport::kde_explicit(xs, curve.bandwidth, curve.grid[i])));
    }
    const double lo = *std::min_element(xs.begin(), xs.end()) - 4 * curve.bandwidth;
    const double hi = *std::max_element(xs.begin(), xs.end()) + 4 * curve.bandwidth;
    const auto wide = sentiment::estimate_density(xs, curve.bandwidth, sentiment::linear_grid(lo, hi, 2001));
    worst_integral = std::max(worst_integral, std::fabs(sentiment::trapezoid_integral(wide) - 1.0));
  }
  c.expect(worst_point <= 1e-12, "explicit-sum agreement");
  c.expect(worst_integral <= 1e-3, "integral");
  const std::vector<double> one{0.0};
  const double peak = sentiment::estimate_density(one, 0.3, std::vector<double>{0.0}).density[0];
  const double closed = 1.0 / (0.3 * std::sqrt(2.0 * std::numbers::pi));
  c.expect(std::fabs(peak - closed) <= 1e-9, "single-point peak");
  return c.done(fmt::format("max pointwise {:.3g}, max |integral - 1| {:.3g}, peak {:.6f} vs {:.6f}", worst_point,
                            worst_integral, peak, closed));
}

// 11 ------------------------------------------------------------------------
Outcome bias_probe() {
  Checker c;
  const auto gender = bias::SwapTable::defaults("gender");
  const auto fig_c = bias::apply_swaps(
      "This is Asher. He likes to pet my face with his soft toe beans when I'm in bed with a migraine. My sweet boy.",
      gender);
  c.expect(fig_c.text ==
               "This is Asher. She likes to pet my face with her soft toe beans when I'm in bed with a migraine. My "
               "sweet girl.",
           "Figure 2(c) swap");
  const auto fig_d = bias::apply_swaps(
      "My husband is a teacher. Yesterday, he turned on the lights in his classroom, to which a young woman in his "
      "class visibly flinched. He turned off the lights again right away and she breathed a sigh of relief. Upon "
      "asking if she's okay, she said she was absent the last couple of days due to migraines. I'd like to think "
      "his simple action of turning off the lights made this girl's day a little more bearable.",
      gender);
  c.expect(fig_d.text ==
               "My wife is a teacher. Yesterday, she turned on the lights in her classroom, to which a young man in "
               "her class visibly flinched. She turned off the lights again right away and he breathed a sigh of "
               "relief. Upon asking if he's okay, he said he was absent the last couple of days due to migraines. "
               "I'd like to think her simple action of turning off the lights made this boy's day a little more "
               "bearable.",
           "Figure 2(d) swap");

  // Involution over random sentences built from table words and filler.
  std::vector<std::string> vocab{"i", "have", "a", "migraine", "today", "and", "the", "took", "imitrex"};
  for (const auto& [x, y] : gender.pairs()) {
    vocab.push_back(x);
    vocab.push_back(y);
  }
  Rng rng(11);
  std::size_t involution_ok = 0;
  for (int s = 0; s < 1000; ++s) {
    std::string text;
    const auto n = 2 + rng.below(14);
    for (std::uint64_t i = 0; i < n; ++i) {
      std::string w = vocab[rng.below(vocab.size())];
      const auto style = rng.below(3);
      if (style == 1) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
      if (style == 2 && w.size() > 1) {
        for (auto& ch : w) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      }
      text += (i ? " " : "") + w;
    }
    text += ".";
    involution_ok += bias::apply_swaps(bias::apply_swaps(text, gender).text, gender).text == text;
  }
  c.expect(involution_ok == 1000, "involution");

  std::vector<corpus::Post> posts{make_post("1", "My husband says he has a migraine"),
                                  make_post("2", "the girl took her Maxalt"), make_post("3", "no swaps here")};
  const auto constant = bias::probe_invariance(
      [](const corpus::Post&) {
        classify::Prediction p;
        p.score = 0.2;
        return p;
      },
      posts, gender);
  c.expect(constant.n_with_swaps == 2 && constant.flip_rate == 0.0, "constant classifier flip rate 0");

  const auto model = single_feature_model("girl", 6.0, -3.0);
  const std::vector<corpus::Post> trigger{make_post("t", "girl")};
  const auto crafted = bias::probe_invariance(
      [&](const corpus::Post& p) { return classify::classify_post(model, p); }, trigger, gender);
  c.expect(crafted.flip_rate == 1.0, "crafted model flip rate 1");
  c.expect(!crafted.records.empty() && std::fabs(crafted.records[0].original.score - logistic(3.0)) < 1e-12 &&
               std::fabs(crafted.records[0].swapped.score - logistic(-3.0)) < 1e-12,
           "closed-form scores");
  return c.done(fmt::format("figure swaps ({} and {} words), involution {}/1000, constant flip rate {}, crafted flip "
                            "rate {}",
                            fig_c.n_swaps, fig_d.n_swaps, involution_ok, constant.flip_rate, crafted.flip_rate));
}

// 12 ------------------------------------------------------------------------
Outcome misspellings() {
  Checker c;
  const auto filters = lexicon::MisspellingFilters::defaults();
  const auto kb = lexicon::KeyboardLayout::qwerty();
  std::string counts;
  for (const char* term : {"botox", "aimovig", "imitrex", "topamax", "nurtec"}) {
    const std::string t = term;
    for (int k = 0; k <= 2; ++k) {
      const auto v = lexicon::generate_misspellings(t, k, filters, kb);
      c.expect(std::find(v.begin(), v.end(), t) != v.end(), "identity included");
      for (const auto& s : v) c.expect(testsupport::dl_distance(s, t) <= static_cast<std::size_t>(k), s);
    }
    std::set<std::string> brute{t};
    for (const auto& cand : testsupport::dl1_neighbourhood(t)) {
      if (!testsupport::is_admitted_edit(t, cand, [&](char a, char b) { return kb.adjacent(a, b); })) continue;
      if (cand.size() < 4 || cand.front() != t.front() || filters.blocklist.contains(cand)) continue;
      brute.insert(cand);
    }
    const auto gen = lexicon::generate_misspellings(t, 1, filters, kb);
    c.expect(std::set<std::string>(gen.begin(), gen.end()) == brute && gen.size() == brute.size(),
             fmt::format("{} count", t));
    counts += fmt::format("{}{}={}", counts.empty() ? "" : ", ", t, gen.size());
  }
  return c.done("depth-1 counts match brute force: " + counts);
}

// 13 ------------------------------------------------------------------------
Outcome kappa() {
  Checker c;
  const auto y = testsupport::labels_from("YYNNYNNY");
  c.expect(eval::cohen_kappa(y, y).kappa == 1.0, "perfect agreement");
  const auto hand = eval::cohen_kappa(testsupport::labels_from("YYNN"), testsupport::labels_from("YNYN"));
  c.expect(hand.kappa == 0.0 && hand.observed == 0.5 && hand.expected == 0.5, "hand example");
  Rng rng(13);
  std::size_t pairs = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto n = 2 + rng.below(50);
    std::vector<Label> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.below(2) ? Label::positive : Label::negative;
      b[i] = rng.below(2) ? Label::positive : Label::negative;
    }
    a[0] = Label::positive;
    b[1] = Label::negative;  // keeps p_e below 1
    c.expect(eval::cohen_kappa(a, b).kappa == eval::cohen_kappa(b, a).kappa, "symmetry");
    ++pairs;
  }
  return c.done(fmt::format("perfect = 1, [Y,Y,N,N] vs [Y,N,Y,N] = {}, symmetric on {} random pairs", hand.kappa,
                            pairs));
}

}  // namespace

int main() {
  log::set_min_level(log::Level::warn);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"end-to-end determinism", end_to_end_determinism},
      {"split protocol", split_protocol},
      {"native classifier sanity", classifier_sanity},
      {"sentence aggregation", sentence_aggregation},
      {"metrics oracle equivalence", metrics_oracle},
      {"bootstrap CI", bootstrap_ci},
      {"sentiment oracle", sentiment_oracle},
      {"median-selection rule", median_selection},
      {"group statistics", group_statistics},
      {"KDE", kde},
      {"bias probe", bias_probe},
      {"misspelling generator", misspellings},
      {"kappa", kappa},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
