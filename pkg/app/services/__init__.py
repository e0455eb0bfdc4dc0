# Pure computational services
