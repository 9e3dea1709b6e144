# Subcommand handlers for zyclone
