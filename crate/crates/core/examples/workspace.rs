//! Loads a workspace file and runs a few commands on it, as the binary
//! would. Pass a path to use another file.

use derivator::cli::{run_command, Command, Format, SideArg, SidesArg, Workspace};
use derivator::repder::Policy;

fn main() -> derivator::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/workspaces/basic.toml").into());
    let ws = Workspace::parse_file(std::path::Path::new(&path))?;
    println!("{} bindings: {}", ws.len(), ws.names().collect::<Vec<_>>().join(", "));

    let policy = Policy { samples: 5, max_dim: 3, ..Policy::default() };
    let cmds = [
        Command::ExactCheck { square: "notexact".into(), side: SidesArg::Both },
        Command::Kan { u: "icorner".into(), x: "span".into(), side: SideArg::Left },
        Command::Cofiber { f: "incl".into() },
        Command::EmitDot { name: "span".into() },
    ];
    for cmd in &cmds {
        print!("{}", run_command(&ws, cmd, &policy)?.render(Format::Text));
        println!();
    }
    Ok(())
}
