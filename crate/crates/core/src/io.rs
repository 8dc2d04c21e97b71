//! File formats.
//!
//! Instances are JSON `{"k": 3, "meetings": [[1, 2], [2, 3]]}` or plain text:
//! a first line `k n` followed by `n` lines of space-separated ids. Solutions
//! are JSON `{"start": [..], "blocks": [[[a, b, c], ..], ..]}` with one inner
//! list per meeting. Hypergraphs are JSON `{"k": 3, "edges": [[1, 2], ..]}`.

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};
use crate::model::{CharId, GroupHypergraph, Meeting, Permutation, Solution, StorylineInstance};

fn from_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Parses either instance format, chosen by the first non-blank character.
pub fn parse_instance(text: &str) -> Result<StorylineInstance> {
    if text.trim_start().starts_with('{') {
        from_json(text, "instance")
    } else {
        parse_instance_text(text)
    }
}

pub fn parse_instance_text(text: &str) -> Result<StorylineInstance> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::Parse("line 1: missing header \"k n\"".into()))?;
    let nums = parse_ids::<usize>(header, hl + 1)?;
    let [k, n] = nums[..] else {
        return Err(Error::Parse(format!("line {}: header needs exactly two numbers \"k n\"", hl + 1)));
    };
    let mut meetings = Vec::with_capacity(n);
    for (i, line) in lines {
        let ids = parse_ids::<CharId>(line, i + 1)?;
        let m = Meeting::new(ids).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        if m.max_id() as usize > k {
            return Err(Error::Parse(format!("line {}: id {} exceeds k = {k}", i + 1, m.max_id())));
        }
        meetings.push(m);
    }
    if meetings.len() != n {
        return Err(Error::Parse(format!("header announces {n} meetings, found {}", meetings.len())));
    }
    StorylineInstance::new(k, meetings)
}

fn parse_ids<T: std::str::FromStr>(line: &str, lineno: usize) -> Result<Vec<T>> {
    line.split_whitespace()
        .enumerate()
        .map(|(f, tok)| tok.parse().map_err(|_| Error::Parse(format!("line {lineno}, field {}: not a number: {tok:?}", f + 1))))
        .collect()
}

pub fn instance_to_json(inst: &StorylineInstance) -> String {
    to_json(inst)
}

pub fn instance_to_text(inst: &StorylineInstance) -> String {
    let mut out = format!("{} {}\n", inst.k, inst.n());
    for m in &inst.meetings {
        let ids: Vec<String> = m.members().iter().map(|c| c.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    from_json(text, "solution")
}

pub fn solution_to_json(sol: &Solution) -> String {
    to_json(sol)
}

pub fn parse_hypergraph(text: &str) -> Result<GroupHypergraph> {
    from_json(text, "hypergraph")
}

pub fn hypergraph_to_json(h: &GroupHypergraph) -> String {
    to_json(h)
}

/// Permutation from a JSON array or a comma/space separated list.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let t = text.trim();
    if t.starts_with('[') {
        return from_json(t, "permutation");
    }
    let ids = t
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<CharId>().map_err(|_| Error::Parse(format!("permutation: not a number: {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Permutation::new(ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BlockCrossing;

    #[test]
    fn instance_round_trips() {
        let inst = StorylineInstance::from_lists(4, &[&[1, 2], &[2, 3, 4]]).unwrap();
        let json = instance_to_json(&inst);
        assert_eq!(json, "{\"k\":4,\"meetings\":[[1,2],[2,3,4]]}\n");
        assert_eq!(parse_instance(&json).unwrap(), inst);
        let text = instance_to_text(&inst);
        assert_eq!(text, "4 2\n1 2\n2 3 4\n");
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn diagnostics_name_the_line() {
        let err = parse_instance("3 2\n1 2\n2 x\n").unwrap_err().to_string();
        assert!(err.contains("line 3, field 2"), "{err}");
        let err = parse_instance("3 1\n1 4\n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        let err = parse_instance("{\"k\": 3,\n \"meetings\": [[1, 2], [2]]}").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        assert!(parse_instance("3 2\n1 2\n").is_err());
    }

    #[test]
    fn solution_and_hypergraph_round_trip() {
        let sol = Solution { start: Permutation::identity(3), blocks: vec![vec![BlockCrossing::new(1, 1, 3).unwrap()], vec![]] };
        let json = solution_to_json(&sol);
        assert_eq!(json, "{\"start\":[1,2,3],\"blocks\":[[[1,1,3]],[]]}\n");
        assert_eq!(parse_solution(&json).unwrap(), sol);
        let h = GroupHypergraph::from_lists(3, &[&[2, 3], &[1, 2]]).unwrap();
        assert_eq!(parse_hypergraph(&hypergraph_to_json(&h)).unwrap(), h);
        assert!(parse_solution("{\"start\":[1,1],\"blocks\":[]}").is_err());
    }

    #[test]
    fn permutations() {
        assert_eq!(parse_permutation("2,1").unwrap().as_slice(), &[2, 1]);
        assert_eq!(parse_permutation("[3, 1, 2]").unwrap().as_slice(), &[3, 1, 2]);
        assert!(parse_permutation("1,1").is_err());
    }
}
