#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.h"
#include "synthetic.h"
#include "radnlp/error.h"

using namespace radnlp;

int main(int argc, char** argv) {
  CLI::App app{"Radiology report NER, embeddings and negation toolkit"};
  app.require_subcommand(1);

  cli::TrainTaggerArgs tt;
  std::string fine_tune;
  auto* train_tagger = app.add_subcommand("train-tagger", "Train the BiLSTM tagger on BRAT reports");
  train_tagger->add_option("--config", tt.config, "key=value tagger config")->required()
      ->check(CLI::ExistingFile);
  train_tagger->add_option("--ann-dir,--train", tt.ann_dir, "directory of .txt/.ann reports")
      ->required();
  train_tagger->add_option("--embeddings", tt.embeddings, "embedding file, or 'random'");
  train_tagger->add_option("--fine-tune", fine_tune, "update W during training (true|false)")
      ->check(CLI::IsMember({"true", "false"}));
  train_tagger->add_option("--out", tt.out, "checkpoint to write")->required();

  std::string ckpt, tag_in, tag_out;
  auto* tag = app.add_subcommand("tag", "Tag reports with a trained checkpoint");
  tag->add_option("--ckpt", ckpt)->required()->check(CLI::ExistingFile);
  tag->add_option("--in", tag_in, "report .txt or directory")->required();
  tag->add_option("--out", tag_out, "tag file to write")->required();

  std::string gold_in, gold_out;
  auto* gold_tags = app.add_subcommand("gold-tags", "Write gold annotations as a tag file");
  gold_tags->add_option("--ann-dir", gold_in)->required();
  gold_tags->add_option("--out", gold_out)->required();

  cli::TrainEmbeddingsArgs te;
  std::size_t te_epochs = 0;
  auto* train_emb = app.add_subcommand("train-embeddings", "Train word embeddings");
  train_emb->add_option("--method", te.method)->required()
      ->check(CLI::IsMember({"random", "lm", "glove", "glove-onto"}));
  train_emb->add_option("--corpus", te.corpus, "directory of .txt reports")->required();
  train_emb->add_option("--ontology", te.ontology, "TSV child, parent, label");
  train_emb->add_option("--alpha", te.alpha, "ontology weight")->capture_default_str();
  train_emb->add_option("--dim", te.dim)->capture_default_str();
  train_emb->add_option("--epochs", te_epochs, "default: 25 for GloVe, 20 for the LM");
  train_emb->add_option("--min-count", te.min_count)->capture_default_str();
  train_emb->add_option("--window", te.window, "co-occurrence window")->capture_default_str();
  train_emb->add_option("--seed", te.seed)->capture_default_str();
  train_emb->add_option("--out", te.out)->required();

  std::string q_emb, q_expr;
  std::size_t q_top = 5;
  auto* nn_query = app.add_subcommand("nn-query", "Nearest neighbours of a word-vector sum");
  nn_query->add_option("--embeddings", q_emb)->required()->check(CLI::ExistingFile);
  nn_query->add_option("--expr", q_expr, "e.g. \"heart + enlarged\"")->required();
  nn_query->add_option("--top", q_top)->capture_default_str();

  cli::BuildDictArgs bd;
  auto* build_dict = app.add_subcommand("build-dict", "Build the rule-based dictionary");
  build_dict->add_option("--ontology", bd.ontology)->required()->check(CLI::ExistingFile);
  build_dict->add_option("--mapping", bd.mapping, "TSV concept id, group")->required()
      ->check(CLI::ExistingFile);
  build_dict->add_option("--manual", bd.manual, "TSV term, group, provenance");
  build_dict->add_option("--out", bd.out)->required();

  cli::RuleNerArgs rn;
  bool no_approx = false, single_word_approx = false, no_redirects = false;
  auto* rule_ner = app.add_subcommand("rule-ner", "Dictionary-based tagger");
  rule_ner->add_option("--dict", rn.dict)->required()->check(CLI::ExistingFile);
  rule_ner->add_option("--redirects", rn.redirects, "TSV phrase, canonical");
  rule_ner->add_option("--threshold", rn.options.threshold, "approximate match cosine")
      ->capture_default_str();
  rule_ner->add_option("--max-phrase", rn.options.max_phrase_tokens)->capture_default_str();
  rule_ner->add_flag("--no-approximate", no_approx);
  rule_ner->add_flag("--single-word-approximate", single_word_approx);
  rule_ner->add_flag("--no-redirects", no_redirects);
  rule_ner->add_option("--in", rn.in)->required();
  rule_ner->add_option("--out", rn.out)->required();

  cli::NegateArgs ng;
  auto* negate = app.add_subcommand("negate", "Classify tagged entities as negated or affirmed");
  negate->add_option("--mode", ng.mode)->check(CLI::IsMember({"negex", "hybrid"}))
      ->capture_default_str();
  negate->add_option("--triggers", ng.triggers, "TSV phrase, role (default: bundled)");
  negate->add_option("--deps", ng.deps, "CoNLL-U parses, one per tagged sentence");
  negate->add_option("--entities", ng.entities, "tag file")->required()->check(CLI::ExistingFile);
  negate->add_option("--out", ng.out, "decisions JSON")->required();

  cli::EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Score predictions against gold annotations");
  eval->add_option("--gold", ev.gold, "directory of .txt/.ann reports")->required();
  eval->add_option("--pred", ev.pred, "tag file or directory, or decisions .json")->required();
  eval->add_option("--task", ev.task)->check(CLI::IsMember({"ner", "negation"}))
      ->capture_default_str();
  eval->add_option("--out", ev.out, "report JSON")->required();

  cli::CrossvalArgs cv;
  auto* crossval = app.add_subcommand("crossval", "k-fold cross-validation of the tagger");
  crossval->add_option("--config", cv.config)->required()->check(CLI::ExistingFile);
  crossval->add_option("--folds", cv.folds)->capture_default_str();
  crossval->add_option("--seed", cv.seed)->capture_default_str();
  crossval->add_option("--ann-dir", cv.ann_dir);
  crossval->add_option("--embeddings", cv.embeddings);
  crossval->add_option("--out", cv.out, "report JSON");

  std::size_t syn_sentences = 200, syn_per_report = 5;
  std::uint64_t syn_seed = 1;
  std::string syn_out, syn_dict;
  auto* synth = app.add_subcommand("synth-corpus", "Generate a small annotated demo corpus");
  synth->add_option("--sentences", syn_sentences)->capture_default_str();
  synth->add_option("--per-report", syn_per_report)->capture_default_str();
  synth->add_option("--seed", syn_seed)->capture_default_str();
  synth->add_option("--out", syn_out, "directory for .txt/.ann files")->required();
  synth->add_option("--dict-out", syn_dict, "also write the grammar's dictionary TSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_tagger) {
      if (!fine_tune.empty()) tt.fine_tune = fine_tune == "true";
      cli::train_tagger(tt, std::cerr);
    } else if (*tag) {
      cli::tag(ckpt, tag_in, tag_out, std::cerr);
    } else if (*gold_tags) {
      corpus::save_tagged(gold_out, cli::gold_tags(cli::load_reports(gold_in)));
    } else if (*train_emb) {
      if (te_epochs) te.epochs = te_epochs;
      cli::train_embeddings(te, std::cerr);
    } else if (*nn_query) {
      cli::nn_query(q_emb, q_expr, q_top, std::cout);
    } else if (*build_dict) {
      cli::build_dict(bd, std::cerr);
    } else if (*rule_ner) {
      rn.options.approximate = !no_approx;
      rn.options.approximate_multiword = !single_word_approx;
      rn.options.redirects = !no_redirects;
      cli::rule_ner(rn, std::cerr);
    } else if (*negate) {
      cli::negate(ng, std::cerr);
    } else if (*eval) {
      cli::eval(ev, std::cerr);
    } else if (*crossval) {
      const auto j = cli::crossval(cv, std::cerr);
      if (cv.out.empty()) std::cout << j.dump(2) << '\n';
    } else if (*synth) {
      const auto c = cli::synthetic_corpus(syn_sentences, syn_per_report, syn_seed);
      cli::write_report_dir(syn_out, c.reports);
      if (!syn_dict.empty()) {
        std::ofstream out(syn_dict, std::ios::binary);
        c.dictionary.write(out);
        if (!out) throw Error("cannot write " + syn_dict);
      }
      std::cerr << "synth-corpus: " << c.reports.size() << " reports, " << c.sentences
                << " sentences -> " << syn_out << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "radnlp: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
