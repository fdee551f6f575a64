fn main() {
    let out = leadrace::cli::run(std::env::args_os());
    if out.to_stderr {
        eprintln!("{}", out.text);
    } else {
        println!("{}", out.text);
    }
    std::process::exit(out.exit_code);
}
