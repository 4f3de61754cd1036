# RQ Configuration Package
