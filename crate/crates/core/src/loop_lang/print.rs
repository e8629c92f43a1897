use super::{LoopProgram, Stmt};

fn write_block(out: &mut String, body: &[Stmt], depth: usize) {
    for stmt in body {
        let pad = "  ".repeat(depth);
        match stmt {
            Stmt::Clear(v) => out.push_str(&format!("{pad}clear {v}\n")),
            Stmt::Copy(v, w) => out.push_str(&format!("{pad}{v} = {w}\n")),
            Stmt::Inc(v) => out.push_str(&format!("{pad}inc {v}\n")),
            Stmt::Loop(v, inner) | Stmt::While(v, inner) => {
                let kw = if matches!(stmt, Stmt::Loop(..)) { "loop" } else { "while" };
                out.push_str(&format!("{pad}{kw} {v} {{\n"));
                write_block(out, inner, depth + 1);
                out.push_str(&format!("{pad}}}\n"));
            }
        }
    }
}

/// Canonical text: two-space indentation, one statement per line, closing
/// braces on their own line, trailing newline.
pub fn print_source(name: &str, arity: usize, body: &[Stmt]) -> String {
    let mut out = format!("fn {name}({arity}) {{\n");
    write_block(&mut out, body, 1);
    out.push_str("}\n");
    out
}

pub fn print_loop(p: &LoopProgram) -> String {
    print_source(p.name(), p.arity(), p.body())
}
