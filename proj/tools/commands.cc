#include "commands.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include "radnlp/corpus/lemmatizer.h"
#include "radnlp/corpus/tokenizer.h"
#include "radnlp/embeddings/cooccurrence.h"
#include "radnlp/embeddings/corruption_lm.h"
#include "radnlp/embeddings/embedding_matrix.h"
#include "radnlp/embeddings/glove.h"
#include "radnlp/embeddings/neighbors.h"
#include "radnlp/embeddings/ontology.h"
#include "radnlp/error.h"
#include "radnlp/evalkit/metrics.h"
#include "radnlp/negation/dependency.h"
#include "radnlp/negation/hybrid.h"
#include "radnlp/negation/negex.h"
#include "radnlp/negation/triggers.h"
#include "radnlp/rulener/dictionary.h"

namespace fs = std::filesystem;

namespace radnlp::cli {
namespace {

std::vector<corpus::LabelledSentence> label_all(const std::vector<corpus::Report>& reports) {
  std::vector<corpus::LabelledSentence> out;
  for (const auto& r : reports) {
    auto ls = corpus::label_report(r);
    out.insert(out.end(), std::make_move_iterator(ls.begin()), std::make_move_iterator(ls.end()));
  }
  return out;
}

std::vector<corpus::Sentence> sentences_of(const std::vector<corpus::Report>& reports) {
  std::vector<corpus::Sentence> out;
  for (const auto& r : reports) {
    auto s = corpus::tokenize_and_split(r.text, r.id);
    out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  return out;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Gold sentences paired with the predicted sentences of the same report.
struct Aligned {
  std::vector<corpus::LabelledSentence> gold;
  std::vector<corpus::TagGrid> pred;
  // (report id, index within the report) -> position in `gold`
  std::map<std::pair<std::string, std::size_t>, std::size_t> position;
};

Aligned align_predictions(const std::vector<corpus::Report>& reports,
                          const std::vector<corpus::TaggedSentence>& pred) {
  std::map<std::string, std::vector<const corpus::TaggedSentence*>> by_report;
  for (const auto& p : pred) by_report[p.report_id].push_back(&p);
  Aligned a;
  for (const auto& r : reports) {
    const auto gold = corpus::label_report(r);
    auto it = by_report.find(r.id);
    const std::size_t have = it == by_report.end() ? 0 : it->second.size();
    if (have != gold.size()) {
      throw Error("eval: report " + r.id + " has " + std::to_string(gold.size()) +
                  " gold sentences but " + std::to_string(have) + " predicted");
    }
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const auto& p = *it->second[i];
      const auto& toks = gold[i].sentence.tokens;
      bool same = p.surfaces.size() == toks.size();
      for (std::size_t t = 0; same && t < toks.size(); ++t) same = p.surfaces[t] == toks[t].surface;
      if (!same) {
        throw Error("eval: report " + r.id + " sentence " + std::to_string(i) +
                    ": predicted tokens differ from the gold tokenization");
      }
      a.position[{r.id, i}] = a.gold.size();
      a.gold.push_back(gold[i]);
      a.pred.push_back(p.grid);
    }
    by_report.erase(r.id);
  }
  if (!by_report.empty()) {
    throw Error("eval: predictions for unknown report " + by_report.begin()->first);
  }
  return a;
}

std::vector<evalkit::NegationItem> gold_negation_items(
    const std::vector<corpus::LabelledSentence>& gold) {
  std::vector<evalkit::NegationItem> out;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    for (const auto& e : gold[s].entities) out.push_back({s, e.channel, e.tokens, e.negated});
  }
  return out;
}

std::vector<evalkit::NegationItem> items_from_decisions(const nlohmann::json& j,
                                                        const Aligned& a) {
  std::vector<evalkit::NegationItem> out;
  for (const auto& s : j.at("sentences")) {
    const std::string report = s.at("report");
    const std::size_t index = s.at("index");
    auto it = a.position.find({report, index});
    if (it == a.position.end()) {
      throw Error("eval: decisions for unknown sentence " + report + "#" + std::to_string(index));
    }
    for (const auto& d : s.at("decisions")) {
      auto cls = corpus::parse_class(d.at("channel").get<std::string>());
      if (!cls) throw Error("eval: unknown channel " + d.at("channel").get<std::string>());
      out.push_back({it->second, static_cast<int>(*cls),
                     d.at("tokens").get<std::vector<std::size_t>>(), d.at("negated").get<bool>()});
    }
  }
  return out;
}

// One fold of negation scoring from tagger output.
evalkit::EvalReport negation_report(const std::vector<corpus::LabelledSentence>& gold,
                                    const std::vector<corpus::TagGrid>& pred) {
  const auto items = gold_negation_items(gold);
  return evalkit::negation_entity_metrics(items, evalkit::negation_from_grids(items, pred));
}

}  // namespace

std::vector<corpus::Report> load_reports(const std::string& path) {
  if (fs::is_directory(path)) return corpus::load_report_dir(path);
  if (!fs::exists(path)) throw Error("no such file or directory: " + path);
  return {corpus::load_report(path)};
}

std::vector<corpus::TaggedSentence> load_tag_files(const std::string& path) {
  if (!fs::is_directory(path)) return corpus::load_tagged(path);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tags") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<corpus::TaggedSentence> out;
  for (const auto& f : files) {
    auto part = corpus::load_tagged(f);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed: " + path);
}

tagger::Tagger fit_tagger(const tagger::TaggerConfig& config,
                          const std::vector<corpus::Report>& reports,
                          const std::string& embeddings, std::ostream& log) {
  if (reports.empty()) throw Error("train-tagger: no reports");
  const auto data = label_all(reports);
  std::vector<corpus::Sentence> sents;
  for (const auto& ls : data) sents.push_back(ls.sentence);
  auto vocab = corpus::Vocabulary::build(sents, config.min_count);
  log << "train-tagger: " << reports.size() << " reports, " << data.size() << " sentences, |V| = "
      << vocab.size() << '\n';

  nn::Matrix init;
  const nn::Matrix* init_ptr = nullptr;
  if (!embeddings.empty() && embeddings != "random") {
    const auto e = embeddings::load_embeddings(embeddings);
    if (e.dim() != config.embedding_dim) {
      throw Error("train-tagger: embeddings have d = " + std::to_string(e.dim()) +
                  " but the config says d = " + std::to_string(config.embedding_dim));
    }
    std::size_t copied = 0;
    init = embeddings::align_embeddings(e, vocab, config.seed, &copied);
    init_ptr = &init;
    log << "train-tagger: " << copied << " of " << vocab.size() << " words seeded from "
        << embeddings << '\n';
  }
  auto t = tagger::Tagger::create(config, std::move(vocab), init_ptr);
  const auto trained = t.train(data, [&](std::size_t epoch, double loss) {
    log << "epoch " << epoch + 1 << " loss " << fmt("%.6f", loss) << '\n';
  });
  if (trained.diverged) throw Error("train-tagger: training diverged");
  return t;
}

void train_tagger(const TrainTaggerArgs& args, std::ostream& log) {
  auto config = tagger::TaggerConfig::from_key_values(tagger::load_key_values(args.config));
  if (args.fine_tune) config.fine_tune_embeddings = *args.fine_tune;
  const auto t = fit_tagger(config, load_reports(args.ann_dir), args.embeddings, log);
  nn::save_checkpoint(args.out, t.to_checkpoint());
  log << "train-tagger: wrote " << args.out << '\n';
}

std::vector<corpus::TaggedSentence> tag_reports(const tagger::Tagger& t,
                                                const std::vector<corpus::Report>& reports) {
  std::vector<corpus::TaggedSentence> out;
  for (const auto& r : reports) {
    auto part = t.tag_report(r.text, r.id);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

void tag(const std::string& checkpoint, const std::string& in, const std::string& out,
         std::ostream& log) {
  const auto t = tagger::Tagger::from_checkpoint(nn::load_checkpoint(checkpoint));
  const auto tagged = tag_reports(t, load_reports(in));
  corpus::save_tagged(out, tagged);
  log << "tag: " << tagged.size() << " sentences -> " << out << '\n';
}

std::vector<corpus::TaggedSentence> gold_tags(const std::vector<corpus::Report>& reports) {
  std::vector<corpus::TaggedSentence> out;
  for (const auto& r : reports) {
    for (const auto& ls : corpus::label_report(r)) {
      corpus::TaggedSentence ts;
      ts.report_id = r.id;
      for (const auto& tok : ls.sentence.tokens) ts.surfaces.push_back(tok.surface);
      ts.grid = ls.grid;
      out.push_back(std::move(ts));
    }
  }
  return out;
}

void train_embeddings(const TrainEmbeddingsArgs& args, std::ostream& log) {
  const auto reports = load_reports(args.corpus);
  const auto sents = sentences_of(reports);
  if (sents.empty()) throw Error("train-embeddings: empty corpus " + args.corpus);
  const auto vocab = corpus::Vocabulary::build(sents, args.min_count);
  std::vector<std::vector<std::size_t>> encoded;
  for (const auto& s : sents) encoded.push_back(corpus::encode_sentence(s, vocab));
  log << "train-embeddings: " << sents.size() << " sentences, |V| = " << vocab.size() << '\n';

  nn::Matrix values;
  if (args.method == "random") {
    values = embeddings::random_embeddings(vocab.size(), args.dim, args.seed);
  } else if (args.method == "lm") {
    embeddings::CorruptionLmConfig cfg;
    cfg.dim = args.dim;
    cfg.seed = args.seed;
    if (args.epochs) cfg.epochs = *args.epochs;
    auto result = embeddings::corruption_lm_train(encoded, vocab.size(), cfg);
    if (result.log.diverged) throw Error("train-embeddings: language model diverged");
    for (std::size_t e = 0; e < result.log.epoch_loss.size(); ++e) {
      log << "epoch " << e + 1 << " loss " << fmt("%.6f", result.log.epoch_loss[e]) << '\n';
    }
    values = std::move(result.embedding);
  } else if (args.method == "glove" || args.method == "glove-onto") {
    const auto table =
        embeddings::build_cooccurrence(encoded, vocab.size(), args.window, vocab.unk_id());
    embeddings::GloveOptions opt;
    opt.dim = args.dim;
    opt.seed = args.seed;
    if (args.epochs) opt.epochs = *args.epochs;
    embeddings::GloveResult result;
    if (args.method == "glove") {
      result = embeddings::glove_train(table, opt);
    } else {
      if (args.ontology.empty()) throw Error("train-embeddings: glove-onto needs --ontology");
      const auto tree = embeddings::OntologyTree::load(args.ontology);
      const auto phi = embeddings::build_ancestor_vectors(tree, vocab);
      log << "train-embeddings: " << phi.matched_words << " words matched an ontology label, "
          << phi.multiword_concepts_skipped << " multi-word concepts skipped\n";
      opt.alpha = args.alpha;
      result = embeddings::glove_ontology_train(table, opt, phi);
    }
    for (std::size_t e = 0; e < result.epoch_cost.size(); ++e) {
      log << "epoch " << e + 1 << " cost " << fmt("%.6f", result.epoch_cost[e]) << '\n';
    }
    values = result.embedding();
  } else {
    throw Error("train-embeddings: unknown method " + args.method);
  }
  embeddings::save_embeddings(args.out, embeddings::EmbeddingMatrix(vocab, std::move(values)));
  log << "train-embeddings: wrote " << args.out << '\n';
}

void nn_query(const std::string& embeddings, const std::string& expr, std::size_t top,
              std::ostream& out) {
  const auto e = embeddings::load_embeddings(embeddings);
  for (const auto& n : embeddings::query_neighbors(e, expr, top)) {
    out << n.word << '\t' << fmt("%.6f", n.similarity) << '\n';
  }
}

void build_dict(const BuildDictArgs& args, std::ostream& log) {
  const auto tree = embeddings::OntologyTree::load(args.ontology);
  const auto mapping = rulener::GroupMapping::load(args.mapping);
  const auto manual =
      args.manual.empty() ? rulener::TermDictionary{} : rulener::TermDictionary::load(args.manual);
  rulener::DictionaryStats stats;
  const auto dict = rulener::build_dictionary(tree, mapping, manual, &stats);
  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw Error("cannot write " + args.out);
  dict.write(out);
  log << "build-dict: " << dict.size() << " terms (" << stats.ontology_entries
      << " from the ontology, " << stats.skipped_concepts << " concepts without a group, "
      << stats.manual_overrides << " manual overrides)\n";
}

void rule_ner(const RuleNerArgs& args, std::ostream& log) {
  auto dict = rulener::TermDictionary::load(args.dict);
  rulener::RedirectTable redirects;
  if (!args.redirects.empty()) {
    redirects = rulener::RedirectTable::load(args.redirects);
    for (const auto& missing : redirects.unresolved(dict)) {
      log << "rule-ner: warning: redirect target not in the dictionary: " << missing << '\n';
    }
  }
  const rulener::RuleNer ner(std::move(dict), std::move(redirects), args.options);
  std::vector<corpus::TaggedSentence> tagged;
  for (const auto& r : load_reports(args.in)) {
    auto part = ner.tag_report(r.text, r.id);
    tagged.insert(tagged.end(), part.begin(), part.end());
  }
  corpus::save_tagged(args.out, tagged);
  log << "rule-ner: " << tagged.size() << " sentences -> " << args.out << '\n';
}

nlohmann::json negation_decisions(const NegateArgs& args) {
  if (args.mode != "negex" && args.mode != "hybrid") {
    throw Error("negate: unknown mode " + args.mode);
  }
  const auto lexicon = args.triggers.empty() ? negation::TriggerLexicon::bundled()
                                             : negation::TriggerLexicon::load(args.triggers);
  const auto tagged = corpus::load_tagged(args.entities);
  std::vector<negation::ParsedSentence> parsed;
  if (args.mode == "hybrid") {
    if (args.deps.empty()) throw Error("negate: hybrid mode needs --deps");
    parsed = negation::load_conllu(args.deps);
    if (parsed.size() != tagged.size()) {
      throw Error("negate: " + args.deps + " has " + std::to_string(parsed.size()) +
                  " sentences but " + args.entities + " has " + std::to_string(tagged.size()));
    }
  }

  nlohmann::json j;
  j["mode"] = args.mode;
  j["sentences"] = nlohmann::json::array();
  std::map<std::string, std::size_t> next_index;
  for (std::size_t s = 0; s < tagged.size(); ++s) {
    const auto& ts = tagged[s];
    std::vector<std::string> tokens;
    for (const auto& surface : ts.surfaces) tokens.push_back(corpus::normalize(surface));
    std::vector<corpus::Entity> entities;
    for (const auto& e : corpus::iobes_to_entities(ts.grid).entities) {
      if (e.channel < corpus::kNumEntityClasses) entities.push_back(e);
    }
    std::vector<negation::EntityTokens> spans;
    for (const auto& e : entities) spans.push_back(e.tokens);
    const auto nx = negation::negex_classify(tokens, spans, lexicon);

    std::vector<negation::NegationDecision> decisions;
    if (args.mode == "hybrid") {
      const auto& graph = parsed[s].graph;
      if (graph.n_tokens != tokens.size()) {
        throw Error("negate: sentence " + std::to_string(s + 1) + " has " +
                    std::to_string(graph.n_tokens) + " CoNLL-U tokens but " +
                    std::to_string(tokens.size()) + " tagged tokens");
      }
      decisions = negation::hybrid_classify(spans, nx, negation::filter_graph(graph));
    } else {
      decisions = negation::negex_decisions(nx);
    }

    nlohmann::json sj;
    sj["report"] = ts.report_id;
    sj["index"] = next_index[ts.report_id]++;
    sj["decisions"] = nlohmann::json::array();
    for (const auto& d : decisions) {
      const auto& e = entities[d.entity];
      std::string text;
      for (auto t : e.tokens) text += (text.empty() ? "" : " ") + ts.surfaces[t];
      nlohmann::json dj;
      dj["channel"] = corpus::class_name(static_cast<corpus::EntityClass>(e.channel));
      dj["tokens"] = e.tokens;
      dj["text"] = text;
      dj["negated"] = d.negated;
      dj["evidence"] = negation::evidence_name(d.evidence);
      dj["trigger"] = d.trigger == negation::kNoTrigger ? nlohmann::json(nullptr)
                                                        : nlohmann::json(d.trigger);
      sj["decisions"].push_back(dj);
    }
    j["sentences"].push_back(sj);
  }
  return j;
}

void negate(const NegateArgs& args, std::ostream& log) {
  const auto j = negation_decisions(args);
  std::size_t total = 0, negated = 0;
  for (const auto& s : j["sentences"]) {
    for (const auto& d : s["decisions"]) {
      ++total;
      negated += d["negated"].get<bool>() ? 1 : 0;
    }
  }
  write_json(args.out, j);
  log << "negate: " << negated << " of " << total << " entities negated -> " << args.out << '\n';
}

evalkit::EvalReport evaluate(const EvalArgs& args) {
  const auto reports = load_reports(args.gold);
  if (args.task == "negation" && fs::path(args.pred).extension() == ".json") {
    std::ifstream in(args.pred);
    if (!in) throw Error("cannot open " + args.pred);
    const auto decisions = nlohmann::json::parse(in);
    // Tokenization alignment is checked through the gold tag positions.
    Aligned a;
    for (const auto& r : reports) {
      const auto gold = corpus::label_report(r);
      for (std::size_t i = 0; i < gold.size(); ++i) {
        a.position[{r.id, i}] = a.gold.size();
        a.gold.push_back(gold[i]);
      }
    }
    return evalkit::negation_entity_metrics(gold_negation_items(a.gold),
                                            items_from_decisions(decisions, a));
  }
  const auto a = align_predictions(reports, load_tag_files(args.pred));
  if (args.task == "ner") {
    std::vector<corpus::TagGrid> gold;
    for (const auto& ls : a.gold) gold.push_back(ls.grid);
    return evalkit::token_overlap_metrics(gold, a.pred);
  }
  if (args.task == "negation") return negation_report(a.gold, a.pred);
  throw Error("eval: unknown task " + args.task);
}

void eval(const EvalArgs& args, std::ostream& log) {
  const auto r = evaluate(args);
  write_json(args.out, r.to_json());
  log << "eval: P " << fmt("%.4f", r.total.precision) << " R " << fmt("%.4f", r.total.recall)
      << " F1 " << fmt("%.4f", r.total.f1);
  if (r.warnings) log << " (" << r.warnings << " predictions matched no gold entity)";
  log << '\n';
}

nlohmann::json crossval(const CrossvalArgs& args, std::ostream& log) {
  const auto kv = tagger::load_key_values(args.config);
  const auto config = tagger::TaggerConfig::from_key_values(kv, {"ann_dir", "embeddings"});
  auto pick = [&](const std::string& flag, const char* key) {
    if (!flag.empty()) return flag;
    auto it = kv.find(key);
    return it == kv.end() ? std::string{} : it->second;
  };
  const std::string ann_dir = pick(args.ann_dir, "ann_dir");
  const std::string embeddings = pick(args.embeddings, "embeddings");
  if (ann_dir.empty()) throw Error("crossval: no annotated corpus (--ann-dir or ann_dir)");

  const auto reports = load_reports(ann_dir);
  std::map<std::string, const corpus::Report*> by_id;
  std::vector<std::string> ids;
  for (const auto& r : reports) {
    by_id[r.id] = &r;
    ids.push_back(r.id);
  }
  auto select = [&](const std::vector<std::string>& wanted) {
    std::vector<corpus::Report> out;
    for (const auto& id : wanted) out.push_back(*by_id.at(id));
    // Fold order depends on the shuffle; training sees reports by id.
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
  };

  std::vector<evalkit::EvalReport> negation_folds;
  const auto cv = evalkit::cross_validate(
      ids, args.folds, args.seed, [&](const auto& train_ids, const auto& test_ids) {
        log << "crossval: fold " << negation_folds.size() + 1 << " of " << args.folds << " ("
            << train_ids.size() << " train, " << test_ids.size() << " test reports)\n";
        const auto t = fit_tagger(config, select(train_ids), embeddings, log);
        const auto test = label_all(select(test_ids));
        std::vector<corpus::TagGrid> gold, pred;
        for (const auto& ls : test) {
          gold.push_back(ls.grid);
          pred.push_back(t.tag(ls.sentence));
        }
        auto neg = negation_report(test, pred);
        neg.fold = std::to_string(negation_folds.size());
        negation_folds.push_back(std::move(neg));
        return evalkit::token_overlap_metrics(gold, pred);
      });

  nlohmann::json neg;
  neg["folds"] = nlohmann::json::array();
  for (const auto& f : negation_folds) neg["folds"].push_back(f.to_json());
  neg["mean"] = evalkit::mean_report(negation_folds).to_json();
  neg["pooled"] = evalkit::pooled_report(negation_folds).to_json();

  nlohmann::json j;
  j["folds"] = args.folds;
  j["seed"] = args.seed;
  j["ner"] = cv.to_json();
  j["negation"] = neg;
  if (!args.out.empty()) write_json(args.out, j);
  log << "crossval: NER mean F1 " << fmt("%.4f", cv.mean.total.f1) << ", negation mean F1 "
      << fmt("%.4f", j["negation"]["mean"]["total"]["f1"].get<double>()) << '\n';
  return j;
}

}  // namespace radnlp::cli
