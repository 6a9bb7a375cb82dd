fn main() {
    polarhull::cli::main()
}
