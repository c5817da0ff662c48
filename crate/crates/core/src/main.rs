fn main() {
    let (code, out) = zetaforge::cli::run_with(std::env::args_os().skip(1), &mut std::io::stderr());
    println!("{out}");
    std::process::exit(code);
}
