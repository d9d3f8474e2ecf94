use super::{LinkKind, NetError, ProofStructure, Slot};
use crate::formula::parse_formula;

/// Parses the line-oriented net format.
///
/// ```text
/// link <id> <ax|cut|tensor|par|c>
/// edge <id> <src> -> <dst>[.L|.R] : <formula>
/// ```
///
/// `#` starts a comment. Links may be declared after the edges that use them.
pub fn parse_net(text: &str) -> Result<ProofStructure, NetError> {
    let mut net = ProofStructure::new();
    let mut edge_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let keyword = body.split_whitespace().next().unwrap_or("");
        match keyword {
            "link" => {
                let toks: Vec<&str> = body.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(NetError::Syntax("expected `link <id> <kind>`".into()).at_line(line));
                }
                let kind = LinkKind::from_keyword(toks[2]).ok_or_else(|| {
                    NetError::Syntax(format!("unknown link kind {:?}", toks[2])).at_line(line)
                })?;
                net.add_link(toks[1], kind).map_err(|e| e.at_line(line))?;
            }
            "edge" => edge_lines.push((line, body)),
            other => {
                return Err(NetError::Syntax(format!("unknown declaration {other:?}")).at_line(line));
            }
        }
    }
    for (line, body) in edge_lines {
        parse_edge(&mut net, body).map_err(|e| e.at_line(line))?;
    }
    if net.link_count() == 0 {
        return Err(NetError::Empty);
    }
    Ok(net)
}

fn parse_edge(net: &mut ProofStructure, body: &str) -> Result<(), NetError> {
    let (head, formula) = body
        .split_once(':')
        .ok_or_else(|| NetError::Syntax("expected `: <formula>` after the edge endpoints".into()))?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    if toks.len() != 5 || toks[3] != "->" {
        return Err(NetError::Syntax("expected `edge <id> <src> -> <dst>[.L|.R] : <formula>`".into()));
    }
    let (dst, slot) = match toks[4].split_once('.') {
        None => (toks[4], None),
        Some((d, "L")) => (d, Some(Slot::L)),
        Some((d, "R")) => (d, Some(Slot::R)),
        Some((_, s)) => return Err(NetError::Syntax(format!("unknown slot {s:?}"))),
    };
    let label = parse_formula(formula)?;
    net.add_edge(toks[1], toks[2], dst, slot, label)?;
    Ok(())
}
