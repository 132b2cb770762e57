# Datalayer for the lexical complexity toolkit: enums, DTOs, file repositories and mappers
