use std::fs;
use std::path::{Path, PathBuf};

use vc_core::graph::format::{parse_edge_list, parse_port_graph};
use vc_core::graph::{EdgeList, Numbering, PortGraph};

use crate::args::{Format, InputArgs, NumberingArg};
use crate::error::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// A parsed input file. Port graphs keep their ports; edge lists get theirs
/// from a numbering policy.
pub enum Input {
    Ports(PortGraph),
    Edges(EdgeList),
}

impl Input {
    pub fn load(path: &Path, format: Option<Format>) -> Result<Input, CliError> {
        let format = match format {
            Some(f) => f,
            None => match path.extension().and_then(|e| e.to_str()) {
                Some("pg") => Format::Pg,
                Some("el") => Format::El,
                _ => {
                    return Err(CliError::Usage(format!(
                        "{}: cannot tell the format from the extension; pass --format pg|el",
                        path.display()
                    )))
                }
            },
        };
        let text = read(path)?;
        let parse_err = |source| CliError::Parse { path: PathBuf::from(path), source };
        Ok(match format {
            Format::Pg => Input::Ports(parse_port_graph(&text).map_err(parse_err)?),
            Format::El => Input::Edges(parse_edge_list(&text).map_err(parse_err)?),
        })
    }

    pub fn edge_list(&self) -> EdgeList {
        match self {
            Input::Ports(g) => g.to_edge_list(),
            Input::Edges(el) => el.clone(),
        }
    }

    /// `None` keeps a port graph's own ports and sorts an edge list.
    pub fn port_graph(&self, numbering: Option<NumberingArg>, seed: Option<u64>) -> Result<PortGraph, CliError> {
        Ok(match (self, numbering) {
            (Input::Ports(g), None) => g.clone(),
            (Input::Edges(el), None) => PortGraph::from_edge_list(el, Numbering::Sorted, None)?,
            (_, Some(n)) => PortGraph::from_edge_list(&self.edge_list(), n.into(), seed)?,
        })
    }
}

pub fn load_graph(args: &InputArgs) -> Result<PortGraph, CliError> {
    if args.seed.is_some() && args.numbering != Some(NumberingArg::Random) {
        return Err(CliError::Usage("--seed only applies to --numbering random".into()));
    }
    Input::load(&args.input, args.format)?.port_graph(args.numbering, args.seed)
}
