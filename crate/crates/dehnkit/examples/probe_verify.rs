fn main() {
    let entries = dehnkit::corpus::bundled();
    println!("corpus entries: {}", entries.len());
    let report = dehnkit::report::run(&entries, 7);
    print!("{}", dehnkit::report::report_text(&report));
}
