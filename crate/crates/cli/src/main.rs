fn main() {
    let code = range_arith_cli::cli_main(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
