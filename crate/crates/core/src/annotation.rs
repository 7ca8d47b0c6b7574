//! Concept mentions and co-reference chains over a [`Document`].
//!
//! Annotations come from one of two places: an interchange file written by an
//! external annotator pipeline (JSON Lines, one record per line), or the
//! built-in fallbacks — a dictionary annotator (greedy longest match against a
//! lexicon) and concept-identity chaining for co-reference. External tools are
//! integrated through files only; this crate never shells out.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{tokenize, Document, Span};

/// One concept occurrence inside a sentence. `span` is a byte range within
/// the sentence text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptMention {
    pub sentence_index: usize,
    pub span: Span,
    pub concept_id: String,
    pub preferred_name: String,
    pub semantic_type: String,
}

/// A single mention site referenced by a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMention {
    pub sentence_index: usize,
    pub span: Span,
}

/// Expressions that refer to the same entity. At least two mentions, sorted
/// by (sentence, span start).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorefChain {
    pub chain_id: String,
    pub mentions: Vec<ChainMention>,
}

impl CorefChain {
    /// Distinct sentence indices touched by this chain, ascending.
    pub fn sentence_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = self.mentions.iter().map(|m| m.sentence_index).collect();
        idx.sort_unstable();
        idx.dedup();
        idx
    }
}

/// A document plus its concept mentions and co-reference chains — the unit
/// every similarity layer is computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedDocument {
    pub document: Document,
    pub concept_mentions: Vec<ConceptMention>,
    pub coref_chains: Vec<CorefChain>,
}

impl AnnotatedDocument {
    /// Validate annotations against the document and normalize ordering.
    /// Mentions are deduplicated by (sentence, span, concept id) so that the
    /// union of several annotator outputs can be ingested as one list.
    pub fn new(
        document: Document,
        mentions: Vec<ConceptMention>,
        chains: Vec<CorefChain>,
    ) -> Result<AnnotatedDocument> {
        let mut mentions = mentions;
        for m in &mentions {
            validate_site(&document, m.sentence_index, m.span, "mention")?;
            if m.concept_id.is_empty() {
                return Err(Error::Validation(format!(
                    "mention at sentence {} span {}..{} has an empty concept_id",
                    m.sentence_index, m.span.start, m.span.end
                )));
            }
        }
        mentions.sort_by(|a, b| {
            (a.sentence_index, a.span.start, a.span.end, &a.concept_id).cmp(&(
                b.sentence_index,
                b.span.start,
                b.span.end,
                &b.concept_id,
            ))
        });
        mentions.dedup_by(|a, b| {
            a.sentence_index == b.sentence_index && a.span == b.span && a.concept_id == b.concept_id
        });

        let mut chains = chains;
        for c in &mut chains {
            if c.mentions.len() < 2 {
                return Err(Error::Validation(format!(
                    "chain {:?} has fewer than 2 mentions",
                    c.chain_id
                )));
            }
            for m in &c.mentions {
                validate_site(&document, m.sentence_index, m.span, "chain mention")?;
            }
            c.mentions
                .sort_by_key(|m| (m.sentence_index, m.span.start, m.span.end));
        }
        chains.sort_by(|a, b| a.chain_id.cmp(&b.chain_id));

        Ok(AnnotatedDocument {
            document,
            concept_mentions: mentions,
            coref_chains: chains,
        })
    }

    /// A document with no annotations at all (similarity layers that need
    /// them degrade to zero).
    pub fn unannotated(document: Document) -> AnnotatedDocument {
        AnnotatedDocument {
            document,
            concept_mentions: Vec::new(),
            coref_chains: Vec::new(),
        }
    }

    /// Annotate with the dictionary fallback and derive identity chains.
    pub fn with_lexicon(document: Document, lexicon: &Lexicon) -> AnnotatedDocument {
        let mentions = annotate_concepts_dictionary(&document, lexicon);
        let chains = derive_coref_chains_fallback(&document, &mentions);
        AnnotatedDocument {
            document,
            concept_mentions: mentions,
            coref_chains: chains,
        }
    }

    /// Concept ids of one sentence's mentions, in span order.
    pub fn concept_sequence(&self, sentence_index: usize) -> Vec<&str> {
        self.concept_mentions
            .iter()
            .filter(|m| m.sentence_index == sentence_index)
            .map(|m| m.concept_id.as_str())
            .collect()
    }

    /// Mention counts per sentence, aligned with sentence indices.
    pub fn mention_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.document.n_sentences()];
        for m in &self.concept_mentions {
            counts[m.sentence_index] += 1;
        }
        counts
    }
}

fn validate_site(doc: &Document, sentence_index: usize, span: Span, what: &str) -> Result<()> {
    let n = doc.n_sentences();
    if sentence_index >= n {
        return Err(Error::Validation(format!(
            "{what} references sentence {sentence_index} but document {:?} has {n} sentences",
            doc.doc_id
        )));
    }
    let text = &doc.sentences[sentence_index].text;
    if span.start > span.end
        || span.end > text.len()
        || !text.is_char_boundary(span.start)
        || !text.is_char_boundary(span.end)
    {
        return Err(Error::Validation(format!(
            "{what} span {}..{} is not a valid byte range of sentence {sentence_index} ({} bytes)",
            span.start,
            span.end,
            text.len()
        )));
    }
    Ok(())
}

/// Payload of one lexicon term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub concept_id: String,
    pub name: String,
    pub semantic_type: String,
}

/// Case-insensitive surface-term dictionary. Terms are stored as normalized
/// token sequences, indexed by first token; the first definition of a term
/// wins.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    by_first_token: HashMap<String, Vec<(Vec<String>, LexiconEntry)>>,
    n_terms: usize,
}

impl Lexicon {
    pub fn new() -> Lexicon {
        Lexicon::default()
    }

    /// Add a term. Terms that tokenize to nothing are ignored; redefinitions
    /// of an existing term are ignored.
    pub fn insert(&mut self, term: &str, entry: LexiconEntry) {
        let tokens: Vec<String> = tokenize(term).into_iter().map(|t| t.normalized).collect();
        if tokens.is_empty() {
            return;
        }
        let bucket = self.by_first_token.entry(tokens[0].clone()).or_default();
        if bucket.iter().any(|(seq, _)| *seq == tokens) {
            return;
        }
        bucket.push((tokens, entry));
        // longest candidate first; equal lengths keep insertion order
        bucket.sort_by(|a, b| b.0.len().cmp(&a.0.len()));
        self.n_terms += 1;
    }

    pub fn len(&self) -> usize {
        self.n_terms
    }

    pub fn is_empty(&self) -> bool {
        self.n_terms == 0
    }

    /// Parse a TSV lexicon: columns `term`, `concept_id`, `name`, `sem_type`.
    /// `name` and `sem_type` may be omitted; blank lines and `#` comments are
    /// skipped.
    pub fn from_tsv(path: impl AsRef<Path>) -> Result<Lexicon> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut lexicon = Lexicon::new();
        for (lineno, line) in content.lines().enumerate() {
            let line_number = lineno + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() < 2 || fields.len() > 4 {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: line_number,
                    message: format!(
                        "expected 2-4 tab-separated fields (term, concept_id[, name[, sem_type]]), got {}",
                        fields.len()
                    ),
                });
            }
            let term = fields[0].trim();
            let concept_id = fields[1].trim();
            if term.is_empty() || concept_id.is_empty() {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: line_number,
                    message: "term and concept_id must be non-empty".into(),
                });
            }
            lexicon.insert(
                term,
                LexiconEntry {
                    concept_id: concept_id.to_string(),
                    name: fields.get(2).map(|s| s.trim()).unwrap_or(term).to_string(),
                    semantic_type: fields.get(3).map(|s| s.trim()).unwrap_or("").to_string(),
                },
            );
        }
        Ok(lexicon)
    }
}

/// Greedy longest-match dictionary annotation, left to right over each
/// sentence's token sequence. A match consumes its tokens, so shorter terms
/// overlapping a longer match are suppressed; ties go to the earlier start.
pub fn annotate_concepts_dictionary(doc: &Document, lexicon: &Lexicon) -> Vec<ConceptMention> {
    let mut mentions = Vec::new();
    for sentence in &doc.sentences {
        let tokens = &sentence.tokens;
        let mut i = 0;
        while i < tokens.len() {
            let mut matched = None;
            if let Some(candidates) = lexicon.by_first_token.get(&tokens[i].normalized) {
                for (seq, entry) in candidates {
                    if i + seq.len() <= tokens.len()
                        && seq
                            .iter()
                            .zip(&tokens[i..i + seq.len()])
                            .all(|(term_tok, tok)| *term_tok == tok.normalized)
                    {
                        matched = Some((seq.len(), entry));
                        break; // candidates are longest-first
                    }
                }
            }
            match matched {
                Some((len, entry)) => {
                    mentions.push(ConceptMention {
                        sentence_index: sentence.index,
                        span: Span::new(tokens[i].span.start, tokens[i + len - 1].span.end),
                        concept_id: entry.concept_id.clone(),
                        preferred_name: entry.name.clone(),
                        semantic_type: entry.semantic_type.clone(),
                    });
                    i += len;
                }
                None => i += 1,
            }
        }
    }
    mentions
}

/// Concept-identity co-reference fallback: every concept mentioned in at
/// least two distinct sentences becomes one chain, keyed by the concept id.
pub fn derive_coref_chains_fallback(
    _doc: &Document,
    mentions: &[ConceptMention],
) -> Vec<CorefChain> {
    let mut groups: BTreeMap<&str, Vec<ChainMention>> = BTreeMap::new();
    for m in mentions {
        groups.entry(m.concept_id.as_str()).or_default().push(ChainMention {
            sentence_index: m.sentence_index,
            span: m.span,
        });
    }
    let mut chains = Vec::new();
    for (concept_id, mut sites) in groups {
        let mut sentences: Vec<usize> = sites.iter().map(|s| s.sentence_index).collect();
        sentences.sort_unstable();
        sentences.dedup();
        if sites.len() >= 2 && sentences.len() >= 2 {
            sites.sort_by_key(|s| (s.sentence_index, s.span.start, s.span.end));
            chains.push(CorefChain {
                chain_id: concept_id.to_string(),
                mentions: sites,
            });
        }
    }
    chains
}

/// One line of the annotation interchange format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum AnnotationRecord {
    Mention {
        doc_id: String,
        sentence_index: usize,
        start: usize,
        end: usize,
        concept_id: String,
        name: String,
        sem_type: String,
    },
    Chain {
        doc_id: String,
        chain_id: String,
        mentions: Vec<ChainSite>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ChainSite {
    sentence_index: usize,
    start: usize,
    end: usize,
}

/// Read interchange JSONL, keeping records whose `doc_id` matches `doc` and
/// validating them against it. Offsets are byte offsets within the sentence.
pub fn load_annotations(
    path: impl AsRef<Path>,
    doc: &Document,
) -> Result<(Vec<ConceptMention>, Vec<CorefChain>)> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut mentions = Vec::new();
    let mut chains = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let line_number = lineno + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: AnnotationRecord =
            serde_json::from_str(line).map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: line_number,
                message: e.to_string(),
            })?;
        match record {
            AnnotationRecord::Mention {
                doc_id,
                sentence_index,
                start,
                end,
                concept_id,
                name,
                sem_type,
            } => {
                if doc_id != doc.doc_id {
                    continue;
                }
                let span = Span::new(start, end);
                validate_site(doc, sentence_index, span, &format!("line {line_number} mention"))?;
                if concept_id.is_empty() {
                    return Err(Error::Validation(format!(
                        "line {line_number}: mention record has an empty concept_id"
                    )));
                }
                mentions.push(ConceptMention {
                    sentence_index,
                    span,
                    concept_id,
                    preferred_name: name,
                    semantic_type: sem_type,
                });
            }
            AnnotationRecord::Chain {
                doc_id,
                chain_id,
                mentions: sites,
            } => {
                if doc_id != doc.doc_id {
                    continue;
                }
                if sites.len() < 2 {
                    return Err(Error::Validation(format!(
                        "line {line_number}: chain {chain_id:?} has fewer than 2 mentions"
                    )));
                }
                let mut chain_mentions = Vec::with_capacity(sites.len());
                for site in sites {
                    let span = Span::new(site.start, site.end);
                    validate_site(
                        doc,
                        site.sentence_index,
                        span,
                        &format!("line {line_number} chain {chain_id:?}"),
                    )?;
                    chain_mentions.push(ChainMention {
                        sentence_index: site.sentence_index,
                        span,
                    });
                }
                chain_mentions.sort_by_key(|m| (m.sentence_index, m.span.start, m.span.end));
                chains.push(CorefChain {
                    chain_id,
                    mentions: chain_mentions,
                });
            }
        }
    }
    Ok((mentions, chains))
}

/// Write mentions then chains as interchange JSONL.
pub fn write_annotations<W: Write>(
    mut writer: W,
    doc_id: &str,
    mentions: &[ConceptMention],
    chains: &[CorefChain],
) -> Result<()> {
    let io_err = |e: std::io::Error| Error::io("<writer>", e);
    for m in mentions {
        let record = AnnotationRecord::Mention {
            doc_id: doc_id.to_string(),
            sentence_index: m.sentence_index,
            start: m.span.start,
            end: m.span.end,
            concept_id: m.concept_id.clone(),
            name: m.preferred_name.clone(),
            sem_type: m.semantic_type.clone(),
        };
        let line = serde_json::to_string(&record).expect("record serialization cannot fail");
        writeln!(writer, "{line}").map_err(io_err)?;
    }
    for c in chains {
        let record = AnnotationRecord::Chain {
            doc_id: doc_id.to_string(),
            chain_id: c.chain_id.clone(),
            mentions: c
                .mentions
                .iter()
                .map(|m| ChainSite {
                    sentence_index: m.sentence_index,
                    start: m.span.start,
                    end: m.span.end,
                })
                .collect(),
        };
        let line = serde_json::to_string(&record).expect("record serialization cannot fail");
        writeln!(writer, "{line}").map_err(io_err)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::Document;

    fn pah_lexicon() -> Lexicon {
        let mut lex = Lexicon::new();
        for (term, id) in [
            ("pulmonary arterial hypertension", "C-PAH"),
            ("PAH", "C-PAH"),
            ("prostacyclin analogues", "C-PCA"),
            ("endothelin receptor antagonists", "C-ERA"),
            ("phosphodiesterase type 5 inhibitors", "C-PDE5"),
        ] {
            lex.insert(
                term,
                LexiconEntry {
                    concept_id: id.into(),
                    name: term.into(),
                    semantic_type: "T047".into(),
                },
            );
        }
        lex
    }

    fn pah_document() -> Document {
        Document::from_text(
            "pah",
            "Pulmonary arterial hypertension (PAH) is a rare and progressive disease of the \
             pulmonary arterial circulation. There are currently 3 classes of drugs approved \
             for the treatment of PAH: prostacyclin analogues, endothelin receptor \
             antagonists, and phosphodiesterase type 5 inhibitors. Although definitive \
             evidence will require randomized and properly controlled long-term trials, the \
             current evidence supports the long-term use of these drugs for the treatment of \
             patients with PAH.",
        )
    }

    #[test]
    fn full_form_and_abbreviation_share_a_concept() {
        let doc = pah_document();
        let mentions = annotate_concepts_dictionary(&doc, &pah_lexicon());
        let in_first: Vec<&ConceptMention> =
            mentions.iter().filter(|m| m.sentence_index == 0).collect();
        assert!(in_first.len() >= 2);
        assert_eq!(in_first[0].concept_id, "C-PAH");
        assert_eq!(in_first[1].concept_id, "C-PAH");
        let text = &doc.sentences[0].text;
        assert_eq!(
            &text[in_first[0].span.start..in_first[0].span.end],
            "Pulmonary arterial hypertension"
        );
        assert_eq!(&text[in_first[1].span.start..in_first[1].span.end], "PAH");
    }

    #[test]
    fn empty_lexicon_finds_nothing() {
        let doc = pah_document();
        assert!(annotate_concepts_dictionary(&doc, &Lexicon::new()).is_empty());
    }

    #[test]
    fn longest_match_wins_over_embedded_terms() {
        let doc = Document::from_text(
            "d",
            "Patients received phosphodiesterase type 5 inhibitors daily.",
        );
        let mut lex = Lexicon::new();
        lex.insert(
            "type 5",
            LexiconEntry {
                concept_id: "X".into(),
                name: "type 5".into(),
                semantic_type: "".into(),
            },
        );
        lex.insert(
            "phosphodiesterase type 5 inhibitors",
            LexiconEntry {
                concept_id: "Y".into(),
                name: "pde5i".into(),
                semantic_type: "".into(),
            },
        );
        let mentions = annotate_concepts_dictionary(&doc, &lex);
        assert_eq!(mentions.len(), 1);
        assert_eq!(mentions[0].concept_id, "Y");
    }

    #[test]
    fn no_mention_is_a_strict_subspan_of_another() {
        let doc = Document::from_text(
            "d",
            "Severe pulmonary arterial hypertension and pulmonary fibrosis were both noted.",
        );
        let mut lex = pah_lexicon();
        lex.insert(
            "pulmonary",
            LexiconEntry {
                concept_id: "C-PULM".into(),
                name: "pulmonary".into(),
                semantic_type: "".into(),
            },
        );
        let mentions = annotate_concepts_dictionary(&doc, &lex);
        for a in &mentions {
            for b in &mentions {
                if a.sentence_index == b.sentence_index && a.span != b.span {
                    let strictly_inside = a.span.start >= b.span.start
                        && a.span.end <= b.span.end
                        && a.span.len() < b.span.len();
                    assert!(!strictly_inside, "{a:?} nested in {b:?}");
                }
            }
        }
        // the bare term still matches where the long form does not apply
        assert!(mentions.iter().any(|m| m.concept_id == "C-PULM"));
    }

    #[test]
    fn annotation_is_position_stable() {
        let doc = pah_document();
        let lex = pah_lexicon();
        let a = annotate_concepts_dictionary(&doc, &lex);
        let b = annotate_concepts_dictionary(&doc, &lex);
        assert_eq!(a, b);
    }

    #[test]
    fn repeated_concept_becomes_one_chain() {
        let doc = pah_document();
        let mentions = annotate_concepts_dictionary(&doc, &pah_lexicon());
        let chains = derive_coref_chains_fallback(&doc, &mentions);
        let pah: Vec<&CorefChain> = chains.iter().filter(|c| c.chain_id == "C-PAH").collect();
        assert_eq!(pah.len(), 1);
        assert!(pah[0].mentions.len() >= 3);
        assert_eq!(pah[0].sentence_indices(), vec![0, 1, 2]);
    }

    #[test]
    fn singleton_concepts_make_no_chain() {
        let doc = Document::from_text("d", "Aspirin was given. Fever subsided.");
        let mut lex = Lexicon::new();
        lex.insert(
            "aspirin",
            LexiconEntry {
                concept_id: "C-ASA".into(),
                name: "aspirin".into(),
                semantic_type: "".into(),
            },
        );
        let mentions = annotate_concepts_dictionary(&doc, &lex);
        assert_eq!(mentions.len(), 1);
        assert!(derive_coref_chains_fallback(&doc, &mentions).is_empty());
    }

    #[test]
    fn repeats_within_one_sentence_do_not_chain() {
        let doc = Document::from_text("d", "Aspirin with aspirin buffer was tested once.");
        let mut lex = Lexicon::new();
        lex.insert(
            "aspirin",
            LexiconEntry {
                concept_id: "C-ASA".into(),
                name: "aspirin".into(),
                semantic_type: "".into(),
            },
        );
        let mentions = annotate_concepts_dictionary(&doc, &lex);
        assert_eq!(mentions.len(), 2);
        assert!(derive_coref_chains_fallback(&doc, &mentions).is_empty());
    }

    #[test]
    fn two_repeated_concepts_make_two_chains() {
        let doc = Document::from_text(
            "d",
            "Aspirin lowered fever. Fever returned without aspirin later.",
        );
        let mut lex = Lexicon::new();
        for (t, id) in [("aspirin", "C-ASA"), ("fever", "C-FEV")] {
            lex.insert(
                t,
                LexiconEntry {
                    concept_id: id.into(),
                    name: t.into(),
                    semantic_type: "".into(),
                },
            );
        }
        let mentions = annotate_concepts_dictionary(&doc, &lex);
        let chains = derive_coref_chains_fallback(&doc, &mentions);
        assert_eq!(chains.len(), 2);
        assert_eq!(chains[0].chain_id, "C-ASA");
        assert_eq!(chains[1].chain_id, "C-FEV");
    }

    #[test]
    fn interchange_round_trip() {
        let doc = pah_document();
        let annotated = AnnotatedDocument::with_lexicon(doc.clone(), &pah_lexicon());
        let mut buf = Vec::new();
        write_annotations(
            &mut buf,
            &doc.doc_id,
            &annotated.concept_mentions,
            &annotated.coref_chains,
        )
        .unwrap();

        let dir = std::env::temp_dir().join("layersum-anno-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("pah.jsonl");
        std::fs::write(&path, &buf).unwrap();

        let (mentions, chains) = load_annotations(&path, &doc).unwrap();
        assert_eq!(mentions, annotated.concept_mentions);
        assert_eq!(chains, annotated.coref_chains);
    }

    #[test]
    fn load_skips_records_for_other_documents() {
        let doc = Document::from_text("mine", "One sentence only here.");
        let dir = std::env::temp_dir().join("layersum-anno-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("other.jsonl");
        std::fs::write(
            &path,
            r#"{"kind":"mention","doc_id":"other","sentence_index":7,"start":0,"end":3,"concept_id":"C1","name":"x","sem_type":""}
{"kind":"mention","doc_id":"mine","sentence_index":0,"start":0,"end":3,"concept_id":"C2","name":"one","sem_type":""}
"#,
        )
        .unwrap();
        let (mentions, chains) = load_annotations(&path, &doc).unwrap();
        assert_eq!(mentions.len(), 1);
        assert_eq!(mentions[0].concept_id, "C2");
        assert!(chains.is_empty());
    }

    #[test]
    fn out_of_range_sentence_index_is_a_validation_error() {
        let doc = Document::from_text("d", "Only one sentence.");
        let dir = std::env::temp_dir().join("layersum-anno-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad-index.jsonl");
        std::fs::write(
            &path,
            r#"{"kind":"mention","doc_id":"d","sentence_index":5,"start":0,"end":3,"concept_id":"C1","name":"x","sem_type":""}"#,
        )
        .unwrap();
        let err = load_annotations(&path, &doc).unwrap_err();
        match err {
            Error::Validation(msg) => {
                assert!(msg.contains("sentence 5"), "{msg}");
                assert!(msg.contains("line 1"), "{msg}");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_line_reports_its_number() {
        let doc = Document::from_text("d", "Only one sentence.");
        let dir = std::env::temp_dir().join("layersum-anno-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad-json.jsonl");
        std::fs::write(
            &path,
            "{\"kind\":\"mention\",\"doc_id\":\"d\",\"sentence_index\":0,\"start\":0,\"end\":4,\"concept_id\":\"C1\",\"name\":\"x\",\"sem_type\":\"\"}\nnot json\n",
        )
        .unwrap();
        let err = load_annotations(&path, &doc).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_file_loads_nothing() {
        let doc = Document::from_text("d", "Only one sentence.");
        let dir = std::env::temp_dir().join("layersum-anno-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("empty.jsonl");
        std::fs::write(&path, "").unwrap();
        let (mentions, chains) = load_annotations(&path, &doc).unwrap();
        assert!(mentions.is_empty());
        assert!(chains.is_empty());
    }

    #[test]
    fn lexicon_tsv_rejects_bad_column_counts() {
        let dir = std::env::temp_dir().join("layersum-anno-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("lex.tsv");
        std::fs::write(
            &path,
            "# term\tconcept_id\tname\tsem_type\naspirin\tC-ASA\tAspirin\tT121\nfever\tC-FEV\n",
        )
        .unwrap();
        let lex = Lexicon::from_tsv(&path).unwrap();
        assert_eq!(lex.len(), 2);

        std::fs::write(&path, "just-a-term-with-no-id\n").unwrap();
        let err = Lexicon::from_tsv(&path).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_mentions_are_unioned() {
        let doc = Document::from_text("d", "Aspirin works. Aspirin helps.");
        let mention = ConceptMention {
            sentence_index: 0,
            span: Span::new(0, 7),
            concept_id: "C-ASA".into(),
            preferred_name: "aspirin".into(),
            semantic_type: "".into(),
        };
        let annotated =
            AnnotatedDocument::new(doc, vec![mention.clone(), mention.clone()], vec![]).unwrap();
        assert_eq!(annotated.concept_mentions.len(), 1);
    }

    #[test]
    fn chains_with_one_mention_are_rejected() {
        let doc = Document::from_text("d", "Aspirin works. Aspirin helps.");
        let chain = CorefChain {
            chain_id: "C-ASA".into(),
            mentions: vec![ChainMention {
                sentence_index: 0,
                span: Span::new(0, 7),
            }],
        };
        assert!(matches!(
            AnnotatedDocument::new(doc, vec![], vec![chain]),
            Err(Error::Validation(_))
        ));
    }
}
