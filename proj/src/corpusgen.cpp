#include "refmatch/corpusgen.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <string>

#include "refmatch/rng.hpp"

namespace refmatch::corpusgen {

namespace {

const std::vector<std::string>& surname_pool() {
    static const std::vector<std::string> pool = {
        "Müller",    "Schmidt",   "Schneider", "Fischer",    "Weber",      "Meyer",
        "Meier",     "Maier",     "Wagner",    "Becker",     "Schulz",     "Hoffmann",
        "Schäfer",   "Koch",      "Bauer",     "Richter",    "Klein",      "Wolf",
        "Schröder",  "Neumann",   "Schwarz",   "Zimmermann", "Braun",      "Krüger",
        "Hofmann",   "Hartmann",  "Lange",     "Schmitt",    "Werner",     "Schmitz",
        "Krause",    "Lehmann",   "Köhler",    "Herrmann",   "König",      "Walter",
        "Mayer",     "Huber",     "Kaiser",    "Fuchs",      "Peters",     "Lang",
        "Scholz",    "Möller",    "Weiß",      "Jung",       "Hahn",       "Schubert",
        "Vogel",     "Friedrich", "Keller",    "Günther",    "Frank",      "Berger",
        "Winkler",   "Roth",      "Beck",      "Lorenz",     "Baumann",    "Franke",
        "Albrecht",  "Schuster",  "Simon",     "Ludwig",     "Böhm",       "Winter",
        "Kraus",     "Martin",    "Schumacher","Krämer",     "Vogt",       "Stein",
        "Jäger",     "Otto",      "Sommer",    "Groß",       "Seidel",     "Heinrich",
        "Brandt",    "Haas",      "Schreiber", "Graf",       "Schulte",    "Dietrich",
        "Ziegler",   "Kuhn",      "Kühn",      "Pohl",       "Engel",      "Horn",
        "Busch",     "Bergmann",  "Thomas",    "Voigt",      "Sauer",      "Arnold",
        "Wolff",     "Pfeiffer",  "Ebert",     "Anderson",   "Carter",     "Mitchell",
        "Turner",    "Phillips",  "Campbell",  "Parker",     "Evans",      "Edwards",
        "Collins",   "Stewart",   "Morris",    "Rogers",     "Reed",       "Cook",
        "Morgan",    "Bell",      "Murphy",    "Bailey",     "Rivera",     "Cooper",
    };
    return pool;
}

const std::vector<std::string>& given_pool() {
    static const std::vector<std::string> pool = {
        "Anna",     "Bernd",   "Claudia", "Dieter", "Elke",    "Frank",  "Gisela",
        "Hans",     "Ingrid",  "Jürgen",  "Karin",  "Lothar",  "Monika", "Norbert",
        "Oliver",   "Petra",   "Rainer",  "Sabine", "Thomas",  "Ursula", "Volker",
        "Werner",   "Andrea",  "Birgit",  "Christian", "Doris", "Erich", "Friedrich",
        "Gerhard",  "Helga",   "James",   "Karen",  "Linda",   "Michael", "Nancy",
        "Patricia", "Robert",  "Susan",   "Wilhelm", "Margarete",
    };
    return pool;
}

// Compound German-style topic nouns: one per (stem, suffix) pair.
std::vector<std::string> make_topic_words() {
    static const std::array<const char*, 22> stems = {
        "arbeit",   "bildung",  "sozial",   "kultur",   "wirtschaft", "politik",
        "gesellschaft", "medien", "jugend",  "familie",  "stadt",      "umwelt",
        "technik",  "wissen",   "religion", "migration", "gesundheit", "recht",
        "verwaltung", "wahl",    "einkommen", "beruf",
    };
    static const std::array<const char*, 12> suffixes = {
        "sforschung", "spolitik",  "ssoziologie", "sstruktur", "swandel",  "sanalyse",
        "ssystem",    "svergleich", "sbericht",   "sstudie",   "stheorie", "sverhalten",
    };
    std::vector<std::string> words;
    words.reserve(stems.size() * suffixes.size());
    for (const char* stem : stems) {
        for (const char* suffix : suffixes) {
            words.push_back(std::string(stem) + suffix);
        }
    }
    return words;
}

const std::vector<std::string>& connector_words() {
    static const std::vector<std::string> pool = {
        "analyse",    "studie",     "untersuchung", "entwicklung", "vergleich",
        "perspektiven", "theorie",  "praxis",       "probleme",    "aspekte",
        "grundlagen", "konzepte",   "methoden",     "befunde",     "deutschland",
        "europa",     "empirische", "regionale",    "strukturen",  "prozesse",
        "evidence",   "approach",   "patterns",     "dynamics",    "institutions",
    };
    return pool;
}

struct Journal {
    std::string name;
    std::string abbrev;
    bool has_abbrev = true;
    int first_year = 1960;
    int year_count = 30;
    std::vector<std::string> topics;    // topical title vocabulary
    std::vector<std::size_t> authors;   // indices into surname_pool
};

struct Article {
    std::size_t journal = 0;
    std::vector<std::size_t> author_surnames;  // surname pool indices
    std::vector<std::string> author_givens;
    std::vector<std::string> title_words;
    int year = 0;
    int volume = 0;
    int issue = 0;
    int page_start = 0;
    int page_end = 0;
};

std::string capitalize(const std::string& word) {
    std::string out = word;
    if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') {
        out[0] = static_cast<char>(out[0] - 32);
    }
    return out;
}

std::string make_abbrev(const std::string& name) {
    std::string abbrev;
    std::string word;
    const auto flush = [&] {
        if (word.empty()) return;
        if (word == "für" || word == "der" || word == "die" || word == "des" || word == "of" ||
            word == "the" || word == "and" || word == "und") {
            abbrev += word == "für" ? "f. " : "";
        } else {
            abbrev += capitalize(word.substr(0, word.size() < 5 ? word.size() : 4)) + ". ";
        }
        word.clear();
    };
    for (const char c : name) {
        if (c == ' ') {
            flush();
        } else {
            word.push_back(c);
        }
    }
    flush();
    if (!abbrev.empty() && abbrev.back() == ' ') abbrev.pop_back();
    return abbrev;
}

std::string title_text(const std::vector<std::string>& words) {
    std::string text;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) text += ' ';
        text += i == 0 ? capitalize(words[i]) : words[i];
    }
    return text;
}

std::string surname_of(std::size_t index) { return surname_pool()[index]; }

// A deterministic non-name, non-word string: surname with two edits.
std::string typo_surname(const std::string& surname, Rng& rng) {
    std::string out = surname;
    for (int edits = 0; edits < 2 && out.size() > 2; ++edits) {
        const std::size_t at = 1 + rng.index(out.size() - 2);
        out[at] = static_cast<char>('b' + rng.index(20));
    }
    return out;
}

class Generator {
public:
    explicit Generator(const CorpusSpec& spec) : spec_(spec), rng_(spec.seed) {}

    Corpus run();

private:
    void make_journals();
    void make_articles();
    void make_duplicates();
    Article make_phantom();

    std::string style_raw(const Article& art, bool garble_title, bool shift_year);
    SegmentedReference make_reference(const Article& art, int tier, const std::string& id,
                                      bool catastrophic);

    double prob_correct() {
        return rng_.clipped_normal(spec_.prob_correct_mean, spec_.prob_correct_sd, 0.55, 0.995);
    }
    double prob_wrong() {
        return rng_.clipped_normal(spec_.prob_wrong_mean, spec_.prob_wrong_sd, 0.05, 0.60);
    }

    SegmentToken tok(std::string text, double probability) {
        return SegmentToken{std::move(text), probability};
    }

    const CorpusSpec& spec_;
    Rng rng_;
    std::vector<std::string> topic_words_ = make_topic_words();
    std::vector<Journal> journals_;
    std::vector<Article> articles_;       // base articles, index = record ordinal
    std::vector<BibRecord> records_;      // base + duplicates
    std::vector<std::vector<std::string>> duplicate_ids_;  // per base article
};

std::string record_id(std::size_t ordinal) {
    std::string digits = std::to_string(ordinal);
    return "r" + std::string(6 - digits.size(), '0') + digits;
}

std::string reference_id(std::size_t ordinal) {
    std::string digits = std::to_string(ordinal);
    return "q" + std::string(4 - digits.size(), '0') + digits;
}

void Generator::make_journals() {
    journals_.resize(spec_.journal_count);
    for (std::size_t j = 0; j < journals_.size(); ++j) {
        Journal& journal = journals_[j];
        const std::string topic = capitalize(rng_.pick(topic_words_));
        switch (rng_.index(4)) {
            case 0: journal.name = "Zeitschrift für " + topic; break;
            case 1: journal.name = "Jahrbuch der " + topic; break;
            case 2: journal.name = topic + " Journal"; break;
            default: journal.name = "Archiv für " + topic; break;
        }
        journal.has_abbrev = rng_.chance(0.7);
        journal.abbrev = make_abbrev(journal.name);
        journal.first_year = 1955 + static_cast<int>(rng_.index(35));
        journal.year_count = 15 + static_cast<int>(rng_.index(26));
        const std::size_t topic_count = 18 + rng_.index(10);
        for (std::size_t t = 0; t < topic_count; ++t) {
            journal.topics.push_back(rng_.pick(topic_words_));
        }
        const std::size_t author_count = 25 + rng_.index(35);
        for (std::size_t a = 0; a < author_count; ++a) {
            journal.authors.push_back(rng_.index(surname_pool().size()));
        }
    }
}

void Generator::make_articles() {
    const std::size_t base_target = spec_.record_count - spec_.duplicate_count;
    while (articles_.size() < base_target) {
        for (std::size_t j = 0; j < journals_.size() && articles_.size() < base_target; ++j) {
            Journal& journal = journals_[j];
            const int year = journal.first_year + static_cast<int>(rng_.index(
                                                      static_cast<std::size_t>(journal.year_count)));
            const std::size_t article_count = 3 + rng_.index(5);
            for (std::size_t a = 0; a < article_count && articles_.size() < base_target; ++a) {
                Article art;
                art.journal = j;
                const std::size_t author_count = 1 + rng_.index(3);
                for (std::size_t k = 0; k < author_count; ++k) {
                    art.author_surnames.push_back(rng_.pick(journal.authors));
                    art.author_givens.push_back(rng_.pick(given_pool()));
                }
                const std::size_t word_count = 4 + rng_.index(6);
                for (std::size_t w = 0; w < word_count; ++w) {
                    art.title_words.push_back(rng_.chance(0.65) ? rng_.pick(journal.topics)
                                                                : rng_.pick(connector_words()));
                }
                art.year = year;
                art.volume = year - journal.first_year + 1;
                art.issue = 1 + static_cast<int>(rng_.index(4));
                art.page_start = 1 + (art.issue - 1) * 60 + static_cast<int>(rng_.index(50));
                art.page_end = art.page_start + 6 + static_cast<int>(rng_.index(33));
                articles_.push_back(std::move(art));
            }
        }
    }

    records_.reserve(spec_.record_count);
    duplicate_ids_.assign(articles_.size(), {});
    for (std::size_t i = 0; i < articles_.size(); ++i) {
        const Article& art = articles_[i];
        const Journal& journal = journals_[art.journal];
        BibRecord record;
        record.id = record_id(records_.size());
        for (std::size_t k = 0; k < art.author_surnames.size(); ++k) {
            record.authors.push_back(Author{surname_of(art.author_surnames[k]),
                                            art.author_givens[k]});
        }
        record.title = title_text(art.title_words);
        record.source = journal.name;
        if (journal.has_abbrev) record.source_abbrev = journal.abbrev;
        record.year = std::to_string(art.year);
        record.volume = std::to_string(art.volume);
        record.issue = std::to_string(art.issue);
        record.pages = PageRange{std::to_string(art.page_start), std::to_string(art.page_end)};
        records_.push_back(std::move(record));
    }
}

void Generator::make_duplicates() {
    for (std::size_t d = 0; d < spec_.duplicate_count; ++d) {
        const std::size_t base = rng_.index(articles_.size());
        BibRecord dup = records_[base];
        dup.id = record_id(records_.size());
        // metadata variants seen across catalog duplicates
        if (rng_.chance(0.7)) {
            for (Author& a : dup.authors) {
                if (a.given && !a.given->empty()) a.given = a.given->substr(0, 1) + ".";
            }
        }
        if (rng_.chance(0.3)) dup.issue.reset();
        if (rng_.chance(0.3) && dup.pages) dup.pages->end.reset();
        if (rng_.chance(0.3) && dup.source_abbrev) dup.source = *dup.source_abbrev;
        if (rng_.chance(0.05) && !dup.title.empty()) {
            // drop the final title word
            const std::size_t cut = dup.title.rfind(' ');
            if (cut != std::string::npos && cut > 0) dup.title.resize(cut);
        }
        duplicate_ids_[base].push_back(dup.id);
        records_.push_back(std::move(dup));
    }
}

Article Generator::make_phantom() {
    Article art;
    art.journal = rng_.index(journals_.size());
    const Journal& journal = journals_[art.journal];
    const std::size_t author_count = 1 + rng_.index(3);
    for (std::size_t k = 0; k < author_count; ++k) {
        if (rng_.chance(spec_.phantom_author_reuse)) {
            art.author_surnames.push_back(rng_.pick(journal.authors));
        } else {
            art.author_surnames.push_back(rng_.index(surname_pool().size()));
        }
        art.author_givens.push_back(rng_.pick(given_pool()));
    }
    const std::size_t word_count = 4 + rng_.index(6);
    for (std::size_t w = 0; w < word_count; ++w) {
        art.title_words.push_back(rng_.chance(0.65) ? rng_.pick(journal.topics)
                                                    : rng_.pick(connector_words()));
    }
    art.year = journal.first_year + static_cast<int>(rng_.index(
                                        static_cast<std::size_t>(journal.year_count)));
    art.volume = art.year - journal.first_year + 1;
    art.issue = 1 + static_cast<int>(rng_.index(4));
    art.page_start = 1 + (art.issue - 1) * 60 + static_cast<int>(rng_.index(50));
    art.page_end = art.page_start + 6 + static_cast<int>(rng_.index(33));
    return art;
}

std::string Generator::style_raw(const Article& art, bool garble_title, bool shift_year) {
    const Journal& journal = journals_[art.journal];
    std::vector<std::string> title_words = art.title_words;
    if (garble_title) {
        for (std::size_t w = 0; w < title_words.size(); ++w) {
            if (rng_.chance(0.7)) title_words[w] = rng_.pick(topic_words_);
        }
    } else if (rng_.chance(spec_.raw_title_typo)) {
        std::string& word = title_words[rng_.index(title_words.size())];
        if (word.size() > 3) word[1 + rng_.index(word.size() - 2)] = 'x';
    }
    int year = art.year;
    if (shift_year) year += rng_.chance(0.5) ? 1 + static_cast<int>(rng_.index(2))
                                             : -1 - static_cast<int>(rng_.index(2));

    std::string authors;
    for (std::size_t k = 0; k < art.author_surnames.size(); ++k) {
        if (k > 0) authors += "/";
        authors += surname_of(art.author_surnames[k]) + ", " +
                   art.author_givens[k].substr(0, 1) + ".";
    }
    const std::string source = rng_.chance(spec_.raw_abbrev_source) && journal.has_abbrev
                                   ? journal.abbrev
                                   : journal.name;
    const std::string year_str =
        std::to_string(year) + (rng_.chance(0.08) ? std::string(1, 'a' + static_cast<char>(
                                                                            rng_.index(3)))
                                                  : "");
    const std::string title = title_text(title_words);
    switch (rng_.index(4)) {
        case 0:
            return authors + " (" + year_str + "): " + title + ". In: " + source + " " +
                   std::to_string(art.volume) + " (" + std::to_string(art.issue) + "), S. " +
                   std::to_string(art.page_start) + "-" + std::to_string(art.page_end) + ".";
        case 1:
            return authors + " (" + year_str + "). " + title + ". " + source + ", " +
                   std::to_string(art.volume) + "(" + std::to_string(art.issue) + "), " +
                   std::to_string(art.page_start) + "-" + std::to_string(art.page_end) + ".";
        case 2:
            return authors + ": " + title + ". " + source + " " + std::to_string(art.volume) +
                   " (" + year_str + "), S. " + std::to_string(art.page_start) + "-" +
                   std::to_string(art.page_end) + ".";
        default:
            return authors + " " + title + ". " + source + " " + year_str + "; " +
                   std::to_string(art.volume) + ": " + std::to_string(art.page_start) + "-" +
                   std::to_string(art.page_end) + ".";
    }
}

// tier: 0 clean, 1 medium, 2 mangled
SegmentedReference Generator::make_reference(const Article& art, int tier, const std::string& id,
                                             bool catastrophic) {
    const Journal& journal = journals_[art.journal];
    SegmentedReference ref;
    ref.id = id;
    ref.raw = style_raw(art, catastrophic, catastrophic);

    // ---- author segment
    std::vector<SegmentToken> author_tokens;
    for (std::size_t k = 0; k < art.author_surnames.size(); ++k) {
        std::string surname = surname_of(art.author_surnames[k]);
        bool wrong = false;
        if (catastrophic || (tier == 2 && rng_.chance(0.3)) || (tier == 1 && rng_.chance(0.15))) {
            surname = typo_surname(surname, rng_);
            wrong = true;
        }
        author_tokens.push_back(tok(surname + ",", wrong ? prob_wrong() : prob_correct()));
        author_tokens.push_back(tok(art.author_givens[k].substr(0, 1) + ".",
                                    wrong ? prob_wrong() : prob_correct()));
    }
    if (tier == 2 && rng_.chance(0.25)) {
        author_tokens.push_back(tok(rng_.pick(connector_words()), prob_wrong()));
    }
    ref.segments[SegmentKind::Author] = std::move(author_tokens);

    // ---- title segment
    std::vector<SegmentToken> title_tokens;
    if (catastrophic) {
        const std::size_t keep = std::max<std::size_t>(1, art.title_words.size() * 3 / 10);
        for (std::size_t w = 0; w < keep; ++w) {
            title_tokens.push_back(tok(art.title_words[w], prob_correct()));
        }
        for (int p = 0; p < 4; ++p) {
            title_tokens.push_back(tok(rng_.pick(topic_words_), prob_wrong()));
        }
    } else if (tier == 2) {
        const double keep_fraction = rng_.uniform(spec_.title_keep_lo, spec_.title_keep_hi);
        for (const std::string& word : art.title_words) {
            if (rng_.chance(keep_fraction)) title_tokens.push_back(tok(word, prob_correct()));
        }
        if (title_tokens.empty()) {
            title_tokens.push_back(tok(art.title_words.front(), prob_correct()));
        }
        const int pollution = spec_.pollution_min +
                              static_cast<int>(rng_.index(static_cast<std::size_t>(
                                  spec_.pollution_max - spec_.pollution_min + 1)));
        for (int p = 0; p < pollution; ++p) {
            // pollution comes from the journal's own topical vocabulary, so it
            // collides with sibling titles rather than with random noise
            title_tokens.push_back(tok(rng_.pick(journal.topics), prob_wrong()));
        }
    } else {
        for (const std::string& word : art.title_words) {
            if (tier == 1 && rng_.chance(0.12)) continue;  // boundary slop drops a word
            title_tokens.push_back(tok(word, tier == 0 ? prob_correct()
                                                       : rng_.clipped_normal(0.82, 0.07, 0.5,
                                                                             0.98)));
        }
        if (title_tokens.empty()) {
            title_tokens.push_back(tok(art.title_words.front(), prob_correct()));
        }
    }
    ref.segments[SegmentKind::Title] = std::move(title_tokens);

    // ---- year segment
    if (!catastrophic || rng_.chance(0.5)) {
        int year = art.year;
        bool wrong = false;
        if (catastrophic) {
            year += rng_.chance(0.5) ? 1 : -1;
            wrong = true;
        } else if (tier == 2 && rng_.chance(0.1)) {
            year += rng_.chance(0.5) ? 1 : -1;
            wrong = true;
        }
        ref.segments[SegmentKind::Year] = {tok(std::to_string(year),
                                               wrong ? prob_wrong() : prob_correct())};
    }

    // ---- pages segment
    if (!catastrophic && rng_.chance(spec_.pages_present)) {
        const bool wrong = tier == 2 && rng_.chance(0.25);
        const int start = wrong ? art.page_start + 1 + static_cast<int>(rng_.index(9))
                                : art.page_start;
        ref.segments[SegmentKind::Page] = {
            tok(std::to_string(start) + "-" + std::to_string(art.page_end),
                wrong ? prob_wrong() : prob_correct())};
    }

    // ---- number segment (native volume/issue labels half of the time)
    if (!catastrophic && rng_.chance(spec_.number_present)) {
        const bool wrong = tier == 2 && rng_.chance(0.2);
        const std::string volume =
            std::to_string(wrong ? art.volume + 1 : art.volume);
        const std::string issue = std::to_string(art.issue);
        const double volume_prob = wrong ? prob_wrong() : prob_correct();
        if (rng_.chance(0.5)) {
            ref.volume_tokens = {tok(volume, volume_prob)};
            if (rng_.chance(0.8)) ref.issue_tokens = {tok(issue, prob_correct())};
        } else {
            ref.segments[SegmentKind::Number] = {tok(volume, volume_prob),
                                                 tok(issue, prob_correct())};
        }
    }

    // ---- source segment
    if (!catastrophic && rng_.chance(spec_.source_present)) {
        const bool abbreviated = rng_.chance(0.2) && journal.has_abbrev;
        const std::string text = abbreviated ? journal.abbrev : journal.name;
        std::vector<SegmentToken> source_tokens;
        std::string word;
        const double base_prob = tier == 2 && rng_.chance(0.3) ? prob_wrong() : prob_correct();
        for (const char c : text) {
            if (c == ' ') {
                if (!word.empty()) source_tokens.push_back(tok(word, base_prob));
                word.clear();
            } else {
                word.push_back(c);
            }
        }
        if (!word.empty()) source_tokens.push_back(tok(word, base_prob));
        if (tier == 2 && rng_.chance(0.3)) {
            source_tokens.push_back(tok(rng_.pick(journal.topics), prob_wrong()));
        }
        ref.segments[SegmentKind::Source] = std::move(source_tokens);
    }

    return ref;
}

Corpus Generator::run() {
    make_journals();
    make_articles();
    make_duplicates();

    Corpus corpus;

    // cited base articles, all distinct
    std::vector<std::size_t> cited;
    {
        std::set<std::size_t> chosen;
        while (chosen.size() < spec_.matchable_count) {
            chosen.insert(rng_.index(articles_.size()));
        }
        cited.assign(chosen.begin(), chosen.end());
        rng_.shuffle(cited);
    }

    struct Planned {
        SegmentedReference ref;
        std::set<std::string> gold;
    };
    std::vector<Planned> planned;
    planned.reserve(spec_.reference_count);

    const auto draw_tier = [&] {
        const double roll = rng_.uniform();
        if (roll < spec_.clean_fraction) return 0;
        if (roll < spec_.clean_fraction + spec_.medium_fraction) return 1;
        return 2;
    };

    for (std::size_t i = 0; i < cited.size(); ++i) {
        const bool catastrophic = i < spec_.catastrophic_count;
        const int tier = catastrophic ? 2 : draw_tier();
        Planned p;
        p.ref = make_reference(articles_[cited[i]], tier, "tmp", catastrophic);
        p.gold.insert(record_id(cited[i]));
        for (const std::string& dup : duplicate_ids_[cited[i]]) p.gold.insert(dup);
        planned.push_back(std::move(p));
    }

    static const std::array<const char*, 7> garbage = {
        "Ebd., S. 13 ff.",      "A.a.O., S. 44.",   "Vgl. ebenda, Kap. 3.",
        "Ders., a.a.O., S. 9.", "Dies., ebd.",      "Op. cit., p. 13.",
        "Ibid., pp. 4 f.",
    };
    for (std::size_t g = 0; g < spec_.degenerate_count; ++g) {
        Planned p;
        p.ref.id = "tmp";
        p.ref.raw = garbage[g % garbage.size()];
        planned.push_back(std::move(p));
    }

    const std::size_t phantom_count =
        spec_.reference_count - spec_.matchable_count - spec_.degenerate_count;
    for (std::size_t i = 0; i < phantom_count; ++i) {
        Planned p;
        p.ref = make_reference(make_phantom(), draw_tier(), "tmp", false);
        planned.push_back(std::move(p));
    }

    rng_.shuffle(planned);
    for (std::size_t i = 0; i < planned.size(); ++i) {
        planned[i].ref.id = reference_id(i);
        corpus.gold.entries[planned[i].ref.id] = std::move(planned[i].gold);
        corpus.references.push_back(std::move(planned[i].ref));
    }
    corpus.records = std::move(records_);
    return corpus;
}

}  // namespace

Corpus generate_corpus(const CorpusSpec& spec) { return Generator(spec).run(); }

}  // namespace refmatch::corpusgen
