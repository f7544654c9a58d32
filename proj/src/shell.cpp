#include "sst/shell.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sst/annotations.hpp"
#include "sst/context.hpp"
#include "sst/coordinatizer.hpp"
#include "sst/error.hpp"
#include "sst/inference.hpp"
#include "sst/store.hpp"

namespace sst {

namespace {

std::string real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Dialect parse_dialect(const std::string& name) {
  if (name == "json") return Dialect::json_like;
  if (name == "mixed") return Dialect::mixed_markup;
  throw Error(ErrorKind::invalid_input, "unknown dialect '" + name + "'");
}

std::string default_store() {
  if (const char* env = std::getenv("KB_STORE"); env && *env) return env;
  return "kb.jsonl";
}

void print_stories(std::ostream& out, const Graph& g, const std::vector<Story>& stories) {
  if (stories.empty()) {
    out << "no stories\n";
    return;
  }
  for (std::size_t i = 0; i < stories.size(); ++i) {
    out << i + 1 << ". [" << real(stories[i].certainty) << "] " << describe(g, stories[i]) << '\n';
  }
}

void print_ranked(std::ostream& out, const Graph& g, const std::vector<Ranked>& ranked) {
  if (ranked.empty()) {
    out << "nothing found\n";
    return;
  }
  for (const Ranked& r : ranked) out << real(r.score) << ' ' << g.concept_at(r.concept_id).name << '\n';
}

class Shell {
 public:
  Shell(std::ostream& out) : out_(out) {}

  int run(const std::vector<std::string>& args, std::ostream& err) {
    CLI::App app{"Semantic spacetime knowledge base"};
    app.name("kb");
    app.require_subcommand(1);
    store_ = default_store();
    app.add_option("-s,--store", store_, "Store file (default $KB_STORE or kb.jsonl)");
    define(app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out_, err);
      return 2;
    }
    try {
      action_();
    } catch (const sst::Error& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
    return 0;
  }

 private:
  /// Loads the store, applies `fn` and writes the result back under the lock.
  void mutate(const std::function<void(KnowledgeBase&)>& fn) {
    StoreLock lock(store_);
    KnowledgeBase kb = load(store_);
    fn(kb);
    save(kb, store_);
  }

  void read(const std::function<void(const KnowledgeBase&)>& fn) {
    const KnowledgeBase kb = load(store_);
    fn(kb);
  }

  void on(CLI::App* cmd, std::function<void()> fn) {
    cmd->callback([this, fn = std::move(fn)] { action_ = fn; });
  }

  void define(CLI::App& app) {
    auto* init = app.add_subcommand("init", "Create a store seeded with the built-in aliases");
    init->add_option("store", init_store_, "Store file");
    init->add_flag("--force", force_, "Overwrite an existing store");
    on(init, [this] {
      if (!init_store_.empty()) store_ = init_store_;
      StoreLock lock(store_);
      if (std::filesystem::exists(store_) && !force_) {
        throw Error(ErrorKind::conflict, "store " + store_ + " already exists (use --force)");
      }
      KnowledgeBase kb;
      install_seed_aliases(kb.graph);
      const std::size_t n = save(kb, store_);
      out_ << "initialized " << store_ << " (" << n << " records)\n";
    });

    auto* concept_cmd = app.add_subcommand("concept", "Manage concepts");
    concept_cmd->require_subcommand(1);
    auto* cadd = concept_cmd->add_subcommand("add", "Add a concept");
    cadd->add_option("name", name_, "Concept name")->required();
    on(cadd, [this] {
      mutate([&](KnowledgeBase& kb) {
        const ConceptId id = kb.graph.add_concept(name_);
        out_ << id << ' ' << kb.graph.concept_at(id).name << '\n';
      });
    });
    auto* crm = concept_cmd->add_subcommand("rm", "Remove a concept and its associations");
    crm->add_option("name", name_, "Concept name")->required();
    on(crm, [this] {
      mutate([&](KnowledgeBase& kb) {
        kb.graph.remove_concept(kb.graph.require(name_));
        out_ << "removed " << name_ << '\n';
      });
    });
    auto* clist = concept_cmd->add_subcommand("list", "List concepts");
    on(clist, [this] {
      read([&](const KnowledgeBase& kb) {
        for (const auto& [id, c] : kb.graph.concepts()) out_ << id << ' ' << c.name << '\n';
      });
    });

    auto* alias_cmd = app.add_subcommand("alias", "Manage association aliases");
    alias_cmd->require_subcommand(1);
    auto* aadd = alias_cmd->add_subcommand("add", "Register an alias");
    aadd->add_option("name", name_, "Alias name")->required();
    aadd->add_option("--type", kind_, "near|follows|contains|expresses")->required();
    aadd->add_option("--dir", dir_, "fwd|recip")->required();
    aadd->add_flag("--negated", negated_, "Denial of the association");
    aadd->add_flag("--no-propagate", no_propagate_, "Never chain beyond one hop");
    aadd->add_option("--reciprocal", reciprocal_, "Name of the reverse reading");
    on(aadd, [this] {
      auto kind = parse_kind(kind_);
      auto dir = parse_direction(dir_);
      if (!kind) throw Error(ErrorKind::invalid_input, "unknown kind '" + kind_ + "'");
      if (!dir) throw Error(ErrorKind::invalid_input, "unknown direction '" + dir_ + "'");
      mutate([&](KnowledgeBase& kb) {
        const Alias& a = kb.graph.register_alias(name_, make_type(*kind, *dir, negated_), !no_propagate_,
                                                 reciprocal_);
        out_ << a.name << ": " << to_string(a.type) << (a.propagating ? "" : " (non-propagating)")
             << '\n';
      });
    });
    auto* alist = alias_cmd->add_subcommand("list", "List aliases");
    on(alist, [this] {
      read([&](const KnowledgeBase& kb) {
        for (const auto& [n, a] : kb.graph.aliases()) {
          out_ << n << ": " << to_string(a.type) << " <-> " << kb.graph.reciprocal_label(a)
               << (a.propagating ? "" : " (non-propagating)") << '\n';
        }
      });
    });

    auto* assoc_cmd = app.add_subcommand("assoc", "Manage associations");
    assoc_cmd->require_subcommand(1);
    auto* sadd = assoc_cmd->add_subcommand("add", "Add \"(A) alias (B)\"");
    sadd->add_option("annotation", text_, "Annotation line")->required();
    sadd->add_option("--context", list_, "Comma-separated context tokens");
    sadd->add_option("--weight", weight_, "Pin the weight in (0,1]")->check(CLI::Range(0.0, 1.0));
    on(sadd, [this] {
      auto triple = parse_annotation(text_);
      if (!triple) throw Error(ErrorKind::invalid_input, "empty annotation");
      for (auto& t : split_list(list_)) triple->contexts.push_back(t);
      mutate([&](KnowledgeBase& kb) {
        const AssocId id = apply_annotation(*triple, kb.graph);
        if (weight_) kb.graph.set_weight(id, *weight_);
        out_ << id << ' ' << real(kb.graph.association(id).weight) << '\n';
      });
    });

    auto* ingest = app.add_subcommand("ingest", "Load annotations or documents");
    ingest->require_subcommand(1);
    auto* iann = ingest->add_subcommand("annotations", "Ingest an annotation file");
    iann->add_option("file", file_, "Annotation file")->required();
    on(iann, [this] {
      const std::string text = read_file(file_);
      mutate([&](KnowledgeBase& kb) {
        out_ << ingest_annotations(text, kb.graph) << " associations added\n";
      });
    });
    auto* idoc = ingest->add_subcommand("doc", "Coordinatize a document into the graph");
    idoc->add_option("file", file_, "Document")->required();
    idoc->add_option("--dialect", dialect_, "json|mixed")->required();
    idoc->add_option("--name", doc_name_, "Document name (default: file stem)");
    on(idoc, [this] {
      const auto regions = coordinatize(read_file(file_), parse_dialect(dialect_));
      const std::string name =
          doc_name_.empty() ? std::filesystem::path(file_).stem().string() : doc_name_;
      mutate([&](KnowledgeBase& kb) {
        out_ << doc_to_graph(regions, kb.graph, name) << " concepts and associations added\n";
      });
    });

    auto* coord = app.add_subcommand("coordinatize", "Print the region listing of a document");
    coord->add_option("file", file_, "Document")->required();
    coord->add_option("--dialect", dialect_, "json|mixed")->required();
    on(coord, [this] {
      out_ << render_regions(coordinatize(read_file(file_), parse_dialect(dialect_)));
    });

    auto* ctx = app.add_subcommand("context", "Short-term context");
    ctx->require_subcommand(1);
    auto* cset = ctx->add_subcommand("set", "Replace the context with these tokens");
    cset->add_option("tokens", list_, "Comma-separated tokens")->required();
    on(cset, [this] {
      mutate([&](KnowledgeBase& kb) {
        kb.context.entries.clear();
        kb.context = observe(kb.context, split_list(list_), kb.graph.params().ell);
        show_context(kb.context);
      });
    });
    auto* cobs = ctx->add_subcommand("observe", "Decay the context and refresh these tokens");
    cobs->add_option("tokens", list_, "Comma-separated tokens")->required();
    on(cobs, [this] {
      mutate([&](KnowledgeBase& kb) {
        kb.context = observe(kb.context, split_list(list_), kb.graph.params().ell);
        show_context(kb.context);
      });
    });
    auto* cshow = ctx->add_subcommand("show", "Print the context");
    on(cshow, [this] { read([&](const KnowledgeBase& kb) { show_context(kb.context); }); });
    auto* cclear = ctx->add_subcommand("clear", "Empty the context");
    on(cclear, [this] {
      mutate([&](KnowledgeBase& kb) {
        kb.context.entries.clear();
        out_ << "context cleared\n";
      });
    });

    auto* tick_cmd = app.add_subcommand("tick", "Advance the clock");
    tick_cmd->add_option("n", count_, "Ticks")->check(CLI::NonNegativeNumber);
    on(tick_cmd, [this] {
      mutate([&](KnowledgeBase& kb) {
        for (std::size_t i = 0; i < count_; ++i) kb.graph.clock() = tick(kb.graph.clock());
        out_ << "t=" << kb.graph.clock().t << '\n';
      });
    });

    auto* activate = app.add_subcommand("activate", "Co-activate concepts seen together now");
    activate->add_option("concepts", list_, "Comma-separated concept names")->required();
    on(activate, [this] {
      mutate([&](KnowledgeBase& kb) {
        ConcurrentInterval interval{kb.graph.now(), {}};
        for (const auto& n : split_list(list_)) interval.activated.insert(kb.graph.require(n));
        const auto touched = co_activate(kb.graph, interval, kb.context);
        out_ << touched.size() << " associations touched\n";
      });
    });

    auto* story = app.add_subcommand("story", "Search stories from a concept");
    story->add_option("concept", name_, "Subject")->required();
    story->add_option("--mode", mode_, "strict|narrative")->check(CLI::IsMember({"strict", "narrative"}));
    story->add_option("--depth", depth_, "Maximum hops")->check(CLI::PositiveNumber);
    story->add_option("--limit", limit_, "Maximum stories")->check(CLI::PositiveNumber);
    on(story, [this] {
      read([&](const KnowledgeBase& kb) {
        const ActiveView view(kb.graph, kb.context);
        SearchOptions opt{mode_ == "strict" ? StoryMode::strict : StoryMode::narrative, depth_, limit_};
        print_stories(out_, kb.graph, story_search(view, kb.graph.require(name_), opt));
      });
    });

    auto* ans = app.add_subcommand("answer", "Tell stories visiting every listed concept");
    ans->add_option("concepts", list_, "Comma-separated concept names")->required();
    ans->add_option("--depth", depth_, "Maximum hops")->check(CLI::PositiveNumber);
    ans->add_option("--limit", limit_, "Maximum stories")->check(CLI::PositiveNumber);
    on(ans, [this] {
      read([&](const KnowledgeBase& kb) {
        std::set<ConceptId> q;
        for (const auto& n : split_list(list_)) q.insert(kb.graph.require(n));
        if (q.empty()) throw Error(ErrorKind::invalid_input, "no concepts given");
        print_stories(out_, kb.graph, answer(ActiveView(kb.graph, kb.context), q, depth_, limit_));
      });
    });

    auto* expl = app.add_subcommand("explain", "Stories converging on a concept");
    expl->add_option("concept", name_, "Concept")->required();
    expl->add_option("--depth", depth_, "Maximum hops")->check(CLI::PositiveNumber);
    expl->add_option("--limit", limit_, "Maximum stories")->check(CLI::PositiveNumber);
    on(expl, [this] {
      read([&](const KnowledgeBase& kb) {
        print_stories(out_, kb.graph,
                      explain(ActiveView(kb.graph, kb.context), kb.graph.require(name_), depth_, limit_));
      });
    });

    using Mode = std::function<std::vector<Ranked>(const ActiveView&, const KnowledgeBase&)>;
    auto reasoning = [&](const char* cmd_name, const char* help, Mode mode) {
      auto* cmd = app.add_subcommand(cmd_name, help);
      cmd->add_option("arg", name_, "Concept (or comma-separated tokens for abduce)")->required();
      on(cmd, [this, mode] {
        read([&](const KnowledgeBase& kb) {
          print_ranked(out_, kb.graph, mode(ActiveView(kb.graph, kb.context), kb));
        });
      });
    };
    reasoning("induce", "Generalizations of a concept", [this](const ActiveView& v, const KnowledgeBase& kb) {
      return induce(v, kb.graph.require(name_));
    });
    reasoning("deduce", "Exemplars and properties of a concept",
              [this](const ActiveView& v, const KnowledgeBase& kb) { return deduce(v, kb.graph.require(name_)); });
    reasoning("abduce", "Concepts characterized by observed tokens",
              [this](const ActiveView& v, const KnowledgeBase&) { return abduce(v, split_list(name_)); });
    reasoning("lateral", "Similar concepts", [this](const ActiveView& v, const KnowledgeBase& kb) {
      return lateral(v, kb.graph.require(name_));
    });

    auto* stats = app.add_subcommand("stats", "Counts and entropy diagnostics");
    on(stats, [this] {
      read([&](const KnowledgeBase& kb) {
        const EntropyRatio r = context_knowledge_ratio(kb.graph, kb.context);
        out_ << "concepts " << kb.graph.concept_count() << '\n'
             << "associations " << kb.graph.edge_count() << '\n'
             << "aliases " << kb.graph.aliases().size() << '\n'
             << "context tokens " << kb.context.entries.size() << '\n'
             << "clock " << kb.graph.clock().t << '\n'
             << "S_C " << real(r.context_entropy) << '\n'
             << "S_A " << real(r.knowledge_entropy) << '\n'
             << "S_C/S_A " << (r.ratio ? real(*r.ratio) : std::string("undefined")) << '\n';
      });
    });

    auto* ann = app.add_subcommand("anneal", "Smooth association weights");
    ann->add_option("--lambda", lambda_, "Mixing factor in [0,1]")->required();
    on(ann, [this] {
      mutate([&](KnowledgeBase& kb) { out_ << anneal(kb.graph, lambda_) << " weights adjusted\n"; });
    });

    auto* rein = app.add_subcommand("reinforce", "Reinforce an association");
    rein->add_option("id", assoc_id_, "Association id")->required();
    on(rein, [this] {
      mutate([&](KnowledgeBase& kb) {
        out_ << real(reinforce(kb.graph, assoc_id_, kb.graph.params(), kb.graph.now())) << '\n';
      });
    });
  }

  void show_context(const ContextState& state) {
    if (state.entries.empty()) {
      out_ << "context empty\n";
      return;
    }
    for (const auto& t : dominant_tokens(state, state.entries.size())) {
      out_ << real(state.entries.at(t)) << ' ' << t << '\n';
    }
  }

  std::ostream& out_;
  std::function<void()> action_ = [] {};
  std::string store_;
  std::string init_store_;
  bool force_ = false;
  std::string name_;
  std::string kind_;
  std::string dir_;
  bool negated_ = false;
  bool no_propagate_ = false;
  std::string reciprocal_;
  std::string text_;
  std::string list_;
  std::string file_;
  std::string dialect_;
  std::string doc_name_;
  std::string mode_ = "narrative";
  std::size_t depth_ = 6;
  std::size_t limit_ = 10;
  std::size_t count_ = 1;
  double lambda_ = 0.0;
  std::optional<double> weight_;
  AssocId assoc_id_ = 0;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Shell shell(out);
  return shell.run(args, err);
}

}  // namespace sst
